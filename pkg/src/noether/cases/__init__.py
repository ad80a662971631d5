from .engine import CaseReport, Script, StepResult, parse_monomial
from .scripts import run_all, run_case
from .theorem18 import run_theorem18_subcase

__all__ = ["CaseReport", "Script", "StepResult", "parse_monomial", "run_all", "run_case",
           "run_theorem18_subcase"]
