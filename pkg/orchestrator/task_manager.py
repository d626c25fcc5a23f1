"""
Task Manager for treecoh

This module tracks the lifecycle of verification checks within a run:
created -> running -> completed or failed.
"""

import threading
import uuid
from datetime import datetime
from typing import Any, Dict, List, Optional

TASK_STATUSES = ("created", "running", "completed", "failed")


class TaskManager:
    """Tracks check tasks; safe to use from worker threads"""

    def __init__(self, event_bus=None):
        """Initialize task manager

        Args:
            event_bus: Optional event bus for publishing task events
        """
        self.tasks: Dict[str, Dict[str, Any]] = {}
        self.event_bus = event_bus
        self.lock = threading.RLock()

    def create_task(self, name: str, parameters: Dict[str, Any] = None) -> str:
        """Create a new task

        Args:
            name: Check identifier
            parameters: Optional task parameters

        Returns:
            Task ID
        """
        task_id = str(uuid.uuid4())
        now = datetime.now().isoformat()
        task = {
            "id": task_id,
            "name": name,
            "parameters": parameters or {},
            "status": "created",
            "created_at": now,
            "updated_at": now,
            "completed_at": None,
            "result": None,
        }
        with self.lock:
            self.tasks[task_id] = task

        if self.event_bus:
            self.event_bus.publish("task.created", {
                "task_id": task_id,
                "task": task
            })

        return task_id

    def get_task(self, task_id: str) -> Optional[Dict[str, Any]]:
        with self.lock:
            return self.tasks.get(task_id)

    def get_all_tasks(self) -> List[Dict[str, Any]]:
        with self.lock:
            return list(self.tasks.values())

    def update_task_status(self, task_id: str, status: str) -> bool:
        """Update task status

        Args:
            task_id: Task ID
            status: One of created, running, completed, failed

        Returns:
            True if task was updated, False otherwise
        """
        if status not in TASK_STATUSES:
            raise ValueError(f"Unknown task status: {status}")
        with self.lock:
            if task_id not in self.tasks:
                return False
            task = self.tasks[task_id]
            task["status"] = status
            task["updated_at"] = datetime.now().isoformat()

        if self.event_bus:
            self.event_bus.publish("task.updated", {
                "task_id": task_id,
                "task": task,
                "status": status
            })

        return True

    def complete_task(self, task_id: str, result: Dict[str, Any] = None) -> bool:
        """Complete a task

        Args:
            task_id: Task ID
            result: Optional task result

        Returns:
            True if task was completed, False otherwise
        """
        return self._finish(task_id, "completed", result or {}, "task.completed", {"result": result})

    def fail_task(self, task_id: str, error: str) -> bool:
        """Mark a task as failed

        Args:
            task_id: Task ID
            error: Error message

        Returns:
            True if task was marked as failed, False otherwise
        """
        return self._finish(task_id, "failed", {"error": error}, "task.failed", {"error": error})

    def _finish(self, task_id: str, status: str, result: Dict[str, Any], event_type: str,
                extra: Dict[str, Any]) -> bool:
        with self.lock:
            if task_id not in self.tasks:
                return False
            task = self.tasks[task_id]
            now = datetime.now().isoformat()
            task["status"] = status
            task["updated_at"] = now
            task["completed_at"] = now
            task["result"] = result

        if self.event_bus:
            self.event_bus.publish(event_type, {"task_id": task_id, "task": task, **extra})

        return True

    def get_tasks_by_status(self, status: str) -> List[Dict[str, Any]]:
        with self.lock:
            return [task for task in self.tasks.values() if task["status"] == status]

    def get_tasks_by_name(self, name: str) -> List[Dict[str, Any]]:
        with self.lock:
            return [task for task in self.tasks.values() if task["name"] == name]
