"""
Orchestrator Package for treecoh

Run configuration and report models, the verification checks and the
engine that runs them in dependency order.
"""

from .models import CHECK_IDS, CheckRecord, Config, EndConfig, HoroballConfig, Report
from .task_manager import TaskManager
from .checks import CHECKS, CheckDefinition, CheckOutcome, SuiteContext
from .check_engine import CheckEngine, jsonable
