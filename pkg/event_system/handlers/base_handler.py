"""
Base Event Handler for treecoh

Handlers dispatch an event of type "a.b" to a method named handle_a_b.
"""

import logging
from typing import Any, Callable, Dict, Iterable, List, Optional

from event_system.event_bus import SUITE_EVENTS


class BaseEventHandler:
    """Base class for event handlers"""

    def __init__(self):
        self.logger = logging.getLogger(self.__class__.__name__)
        self.subscriptions: List[int] = []

    def attach(self, event_bus, event_types: Iterable[str] = SUITE_EVENTS) -> None:
        """Subscribe handle_event to the given event types"""
        for event_type in event_types:
            self.subscriptions.append(event_bus.subscribe(event_type, self.handle_event))

    def handle_event(self, event: Dict[str, Any]) -> Optional[Dict[str, Any]]:
        """Handle an event

        Args:
            event: Event to handle

        Returns:
            Optional result of handling the event
        """
        event_type = event.get("type", "")
        handler_method = self._get_handler_method(event_type)
        if handler_method is None:
            self.logger.debug(f"No handler method for event type: {event_type}")
            return None
        try:
            return handler_method(event)
        except Exception as e:
            self.logger.error(f"Error handling event {event_type}: {str(e)}")
            return {"error": str(e)}

    def _get_handler_method(self, event_type: str) -> Optional[Callable]:
        method_name = f"handle_{event_type.replace('.', '_')}"
        return getattr(self, method_name, None)
