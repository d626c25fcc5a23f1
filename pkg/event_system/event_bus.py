"""
Event Bus for treecoh

This module provides the in-process event bus that carries progress events
of a verification run between the check engine and its listeners.
"""

import itertools
import logging
import threading
from datetime import datetime
from typing import Any, Callable, Dict, List, Optional, Set

CHECK_STARTED = "check.started"
CHECK_COMPLETED = "check.completed"
CHECK_FAILED = "check.failed"
SUITE_COMPLETED = "suite.completed"

SUITE_EVENTS = (CHECK_STARTED, CHECK_COMPLETED, CHECK_FAILED, SUITE_COMPLETED)

Callback = Callable[[Dict[str, Any]], None]


class EventBus:
    """Publish/subscribe bus with per-type history

    Subscribers are called in subscription order, exact-type subscribers
    before "*" subscribers. A failing subscriber is logged and skipped.
    """

    def __init__(self, max_history_per_event: int = 100):
        """Initialize event bus

        Args:
            max_history_per_event: Events kept per event type
        """
        self.subscribers: Dict[str, List[tuple]] = {}
        self.event_history: Dict[str, List[Dict[str, Any]]] = {}
        self.max_history_per_event = max_history_per_event
        self.lock = threading.RLock()
        self.logger = logging.getLogger(__name__)
        self._sequence = itertools.count(1)
        self._subscription_ids = itertools.count(1)

    def publish(self, event_type: str, event_data: Dict[str, Any] = None) -> int:
        """Publish an event

        Args:
            event_type: Event type
            event_data: Event data

        Returns:
            Sequence number of the event
        """
        with self.lock:
            event = {
                "id": next(self._sequence),
                "type": event_type,
                "data": event_data or {},
                "timestamp": datetime.now().isoformat(),
            }
            history = self.event_history.setdefault(event_type, [])
            history.append(event)
            if len(history) > self.max_history_per_event:
                del history[:-self.max_history_per_event]

            targets = list(self.subscribers.get(event_type, ())) + list(self.subscribers.get("*", ()))
            for _, callback in targets:
                try:
                    callback(event)
                except Exception as e:
                    self.logger.error(f"Error notifying subscriber for event {event_type}: {str(e)}")

        return event["id"]

    def subscribe(self, event_type: str, callback: Callback) -> int:
        """Subscribe to an event

        Args:
            event_type: Event type or "*" for all events
            callback: Callback function

        Returns:
            Subscription ID
        """
        with self.lock:
            subscription_id = next(self._subscription_ids)
            self.subscribers.setdefault(event_type, []).append((subscription_id, callback))
        return subscription_id

    def unsubscribe(self, subscription_id: int) -> bool:
        """Remove a subscription

        Args:
            subscription_id: ID returned by subscribe

        Returns:
            True if a subscription was removed, False otherwise
        """
        with self.lock:
            for event_type, entries in list(self.subscribers.items()):
                kept = [entry for entry in entries if entry[0] != subscription_id]
                if len(kept) != len(entries):
                    if kept:
                        self.subscribers[event_type] = kept
                    else:
                        del self.subscribers[event_type]
                    return True
        return False

    def get_event_history(self, event_type: Optional[str] = None, limit: Optional[int] = None) -> List[Dict[str, Any]]:
        """Get event history, oldest first

        Args:
            event_type: Optional event type filter
            limit: Optional number of most recent events to return

        Returns:
            List of events
        """
        with self.lock:
            if event_type:
                events = list(self.event_history.get(event_type, []))
            else:
                events = sorted((e for history in self.event_history.values() for e in history),
                                key=lambda e: e["id"])
        if limit:
            return events[-limit:]
        return events

    def clear_history(self, event_type: Optional[str] = None) -> None:
        with self.lock:
            if event_type:
                self.event_history.pop(event_type, None)
            else:
                self.event_history = {}

    def get_subscriber_count(self, event_type: Optional[str] = None) -> int:
        with self.lock:
            if event_type:
                return len(self.subscribers.get(event_type, ()))
            return sum(len(entries) for entries in self.subscribers.values())

    def get_event_types(self) -> Set[str]:
        with self.lock:
            return set(self.event_history.keys())
