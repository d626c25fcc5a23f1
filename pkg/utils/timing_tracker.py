"""
Timing Tracker for treecoh

This module records wall-clock time spent in named operations (one per
verification check) so the CLI can print a summary after a run.
"""

import threading
import time
from datetime import datetime
from typing import Dict


class TimingTracker:
    """Elapsed-time tracker for suite operations"""

    def __init__(self):
        """Initialize timing tracker"""
        self.timings: Dict[str, Dict[str, float]] = {}
        self.session_start = datetime.now().isoformat()
        self.lock = threading.RLock()

    class OperationTracker:
        """Context manager timing one operation"""

        def __init__(self, tracker, operation):
            self.tracker = tracker
            self.operation = operation
            self.started = 0.0
            self.elapsed_ms = 0

        def __enter__(self):
            """Start the clock"""
            self.started = time.perf_counter()
            return self

        def __exit__(self, exc_type, exc_val, exc_tb):
            """Stop the clock and record the elapsed time"""
            self.elapsed_ms = int((time.perf_counter() - self.started) * 1000)
            self.tracker.record(self.operation, self.elapsed_ms)
            return False

    def track(self, operation: str) -> "TimingTracker.OperationTracker":
        """Track elapsed time for an operation

        Args:
            operation: Operation name (a check id)

        Returns:
            Context manager exposing elapsed_ms after exit
        """
        return self.OperationTracker(self, operation)

    def record(self, operation: str, elapsed_ms: int) -> None:
        """Add a measurement

        Args:
            operation: Operation name
            elapsed_ms: Elapsed milliseconds
        """
        with self.lock:
            entry = self.timings.setdefault(operation, {"total_ms": 0, "calls": 0})
            entry["total_ms"] += elapsed_ms
            entry["calls"] += 1

    def get_usage_report(self) -> Dict[str, Dict[str, float]]:
        """Get per-operation totals

        Returns:
            Dictionary keyed by operation name, sorted by name
        """
        with self.lock:
            return {name: dict(self.timings[name]) for name in sorted(self.timings)}
