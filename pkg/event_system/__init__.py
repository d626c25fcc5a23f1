"""
Event System Package for treecoh

The in-process event bus that carries check progress events.
"""

from .event_bus import (CHECK_COMPLETED, CHECK_FAILED, CHECK_STARTED, SUITE_COMPLETED, SUITE_EVENTS,
                        EventBus)
