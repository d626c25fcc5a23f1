"""
Check Engine for treecoh

This module runs the requested verification checks in dependency waves.
Checks of one wave run on a thread pool; every check is tracked as a task
and announced on the event bus. The report is assembled in check-id order,
so it does not depend on the number of threads.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, is_dataclass
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Mapping, Optional

import networkx as nx

from orchestrator.checks import CHECKS, CheckDefinition, CheckOutcome, SuiteContext
from orchestrator.models import FAIL, CheckRecord, Config, Report
from utils import config as config_io
from utils.errors import ConfigError, TreecohError
from utils.timing_tracker import TimingTracker


def jsonable(value: Any) -> Any:
    """Convert check data into plain JSON values"""
    if isinstance(value, Fraction):
        return str(value) if value.denominator != 1 else int(value)
    if isinstance(value, Mapping):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (set, frozenset)):
        return [jsonable(v) for v in sorted(value)]
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if hasattr(value, "to_dict"):
        return jsonable(value.to_dict())
    if is_dataclass(value) and not isinstance(value, type):
        return jsonable(asdict(value))
    return value


class CheckEngine:
    """Runs verification checks with dependency ordering"""

    def __init__(self, task_manager=None, event_bus=None,
                 checks: Optional[Mapping[str, CheckDefinition]] = None):
        """Initialize check engine

        Args:
            task_manager: Optional task manager for tracking check tasks
            event_bus: Optional event bus for publishing check events
            checks: Check definitions by id; defaults to the built-in checks
        """
        self.task_manager = task_manager
        self.event_bus = event_bus
        self.checks: Dict[str, CheckDefinition] = dict(checks if checks is not None else CHECKS)
        self.timing = TimingTracker()
        self.logger = logging.getLogger(self.__class__.__name__)

    def waves(self, requested: Iterable[str]) -> List[List[str]]:
        """Group the requested checks into waves that respect dependencies

        A dependency that was not requested is ignored; within a wave the
        checks are sorted by id.
        """
        requested = sorted(set(requested))
        unknown = [c for c in requested if c not in self.checks]
        if unknown:
            raise ConfigError(f"Unknown checks: {unknown}", reason="unknown_check", checks=unknown)
        graph = nx.DiGraph()
        graph.add_nodes_from(requested)
        for check in requested:
            for dependency in self.checks[check].depends_on:
                if dependency in graph:
                    graph.add_edge(dependency, check)
        return [sorted(wave) for wave in nx.topological_generations(graph)]

    def run(self, config: Config, threads: Optional[int] = None) -> Report:
        """Run the checks named in a configuration

        Args:
            config: Validated configuration
            threads: Worker threads; defaults to config.threads

        Returns:
            Report with one record per requested check
        """
        config.validate_depths()
        threads = threads or config.threads
        digest = config_io.config_hash(config)
        context = SuiteContext(config)
        records: List[CheckRecord] = []

        with ThreadPoolExecutor(max_workers=threads) as pool:
            for wave in self.waves(config.checks):
                self.logger.info(f"running wave {wave}")
                records.extend(pool.map(lambda check: self._run_check(check, context), wave))

        report = Report.from_records(digest, records)
        if self.event_bus:
            self.event_bus.publish("suite.completed", {
                "config_hash": digest,
                "summary": report.summary(),
                "passed": report.passed,
            })
        return report

    def _run_check(self, check: str, context: SuiteContext) -> CheckRecord:
        """Run one check and turn its outcome or error into a record"""
        definition = self.checks[check]
        task_id = None
        if self.task_manager:
            task_id = self.task_manager.create_task(check, {"depends_on": list(definition.depends_on)})
            self.task_manager.update_task_status(task_id, "running")
        if self.event_bus:
            self.event_bus.publish("check.started", {"check": check, "task_id": task_id})

        tracker = self.timing.track(check)
        try:
            with tracker:
                outcome: CheckOutcome = definition.run(context)
            record = CheckRecord(id=check, params=jsonable(outcome.params), result=outcome.result,
                                 data=jsonable(outcome.data))
        except TreecohError as e:
            self.logger.error(f"check {check} raised {e.reason}: {str(e)}")
            record = CheckRecord(id=check, result=FAIL, data={"error": jsonable(e.to_dict())})
        except Exception as e:
            self.logger.error(f"check {check} crashed: {str(e)}")
            record = CheckRecord(id=check, result=FAIL,
                                 data={"error": {"reason": "internal", "message": str(e), "details": {}}})

        if context.config.record_timing:
            record.ms = int(tracker.elapsed_ms)

        if record.result == FAIL:
            if self.task_manager and task_id:
                self.task_manager.fail_task(task_id, record.data.get("error", {}).get("message", "check failed"))
            if self.event_bus:
                self.event_bus.publish("check.failed", {"check": check, "task_id": task_id,
                                                        "record": record.model_dump(mode="json")})
        else:
            if self.task_manager and task_id:
                self.task_manager.complete_task(task_id, {"result": record.result})
            if self.event_bus:
                self.event_bus.publish("check.completed", {"check": check, "task_id": task_id,
                                                           "record": record.model_dump(mode="json")})
        self.logger.info(f"check {check}: {record.result}")
        return record

    def get_timing_report(self) -> Dict[str, Dict[str, float]]:
        return self.timing.get_usage_report()
