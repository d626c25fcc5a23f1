"""
Progress reporting for verification runs
"""

from typing import Any, Callable, Dict, List, Optional

from event_system.handlers.base_handler import BaseEventHandler


class ProgressHandler(BaseEventHandler):
    """Writes one line per check event and counts outcomes"""

    def __init__(self, echo: Optional[Callable[[str], None]] = None):
        super().__init__()
        self.echo = echo
        self.started: List[str] = []
        self.counts: Dict[str, int] = {"pass": 0, "fail": 0, "not_applicable": 0}

    def _emit(self, line: str) -> None:
        if self.echo:
            self.echo(line)
        else:
            self.logger.info(line)

    def handle_check_started(self, event: Dict[str, Any]) -> None:
        check = event["data"]["check"]
        self.started.append(check)
        self._emit(f"[start] {check}")

    def handle_check_completed(self, event: Dict[str, Any]) -> None:
        record = event["data"]["record"]
        self.counts[record["result"]] = self.counts.get(record["result"], 0) + 1
        self._emit(f"[{record['result']}] {record['id']}")

    def handle_check_failed(self, event: Dict[str, Any]) -> None:
        record = event["data"]["record"]
        self.counts["fail"] += 1
        error = record.get("data", {}).get("error")
        suffix = f": {error['message']}" if error else ""
        self._emit(f"[fail] {record['id']}{suffix}")

    def handle_suite_completed(self, event: Dict[str, Any]) -> None:
        summary = event["data"]["summary"]
        self._emit(", ".join(f"{key}={value}" for key, value in sorted(summary.items())))
