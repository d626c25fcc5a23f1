"""
Unit tests for Task Manager
"""

import sys
import os
import unittest
from unittest.mock import MagicMock

sys.path.append(os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))))

from orchestrator.task_manager import TaskManager

class TestTaskManager(unittest.TestCase):
    def setUp(self):
        """Set up test environment"""
        self.event_bus = MagicMock()
        self.task_manager = TaskManager(event_bus=self.event_bus)

    def test_create_task(self):
        """Test creating a new task"""
        task_id = self.task_manager.create_task("corner_model", {"depends_on": []})

        self.assertIsNotNone(task_id)
        self.assertIn(task_id, self.task_manager.tasks)

        task = self.task_manager.get_task(task_id)
        self.assertEqual(task["name"], "corner_model")
        self.assertEqual(task["parameters"], {"depends_on": []})
        self.assertEqual(task["status"], "created")
        self.assertIsNone(task["completed_at"])

        self.event_bus.publish.assert_called_once_with("task.created", {
            "task_id": task_id,
            "task": task
        })

    def test_get_task(self):
        """Test getting a task by ID"""
        task_id = self.task_manager.create_task("snf_oracle")

        task = self.task_manager.get_task(task_id)

        self.assertEqual(task["id"], task_id)
        self.assertEqual(task["parameters"], {})
        self.assertIsNone(self.task_manager.get_task("non-existent-id"))

    def test_get_all_tasks(self):
        """Test getting all tasks"""
        task_id1 = self.task_manager.create_task("snf_oracle")
        task_id2 = self.task_manager.create_task("zero_chain")

        tasks = self.task_manager.get_all_tasks()

        self.assertEqual(len(tasks), 2)
        self.assertEqual({task["id"] for task in tasks}, {task_id1, task_id2})

    def test_update_task_status(self):
        """Test updating task status"""
        task_id = self.task_manager.create_task("snf_oracle")
        self.event_bus.reset_mock()

        self.assertTrue(self.task_manager.update_task_status(task_id, "running"))

        task = self.task_manager.get_task(task_id)
        self.assertEqual(task["status"], "running")
        self.event_bus.publish.assert_called_once_with("task.updated", {
            "task_id": task_id,
            "task": task,
            "status": "running"
        })

        self.assertFalse(self.task_manager.update_task_status("non-existent-id", "running"))
        with self.assertRaises(ValueError):
            self.task_manager.update_task_status(task_id, "paused")

    def test_complete_task(self):
        """Test completing a task"""
        task_id = self.task_manager.create_task("snf_oracle")
        self.event_bus.reset_mock()

        self.assertTrue(self.task_manager.complete_task(task_id, {"result": "pass"}))

        task = self.task_manager.get_task(task_id)
        self.assertEqual(task["status"], "completed")
        self.assertEqual(task["result"], {"result": "pass"})
        self.assertIsNotNone(task["completed_at"])
        self.event_bus.publish.assert_called_once_with("task.completed", {
            "task_id": task_id,
            "task": task,
            "result": {"result": "pass"}
        })

        self.assertFalse(self.task_manager.complete_task("non-existent-id"))

    def test_fail_task(self):
        """Test marking a task as failed"""
        task_id = self.task_manager.create_task("zero_chain")
        self.event_bus.reset_mock()

        self.assertTrue(self.task_manager.fail_task(task_id, "cocycle is not a coboundary"))

        task = self.task_manager.get_task(task_id)
        self.assertEqual(task["status"], "failed")
        self.assertEqual(task["result"], {"error": "cocycle is not a coboundary"})
        self.event_bus.publish.assert_called_once_with("task.failed", {
            "task_id": task_id,
            "task": task,
            "error": "cocycle is not a coboundary"
        })

    def test_get_tasks_by_status_and_name(self):
        """Test filtering tasks"""
        first = self.task_manager.create_task("snf_oracle")
        second = self.task_manager.create_task("zero_chain")
        self.task_manager.update_task_status(first, "running")

        running = self.task_manager.get_tasks_by_status("running")
        self.assertEqual([task["id"] for task in running], [first])
        self.assertEqual([task["id"] for task in self.task_manager.get_tasks_by_name("zero_chain")], [second])
        self.assertEqual(self.task_manager.get_tasks_by_status("failed"), [])

    def test_without_event_bus(self):
        """Test the manager works without an event bus"""
        manager = TaskManager()
        task_id = manager.create_task("snf_oracle")
        self.assertTrue(manager.complete_task(task_id))
        self.assertEqual(manager.get_task(task_id)["result"], {})

if __name__ == "__main__":
    unittest.main()
