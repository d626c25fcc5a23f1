"""
Event Handlers for treecoh

This package contains the handlers that listen to verification-run events.
"""

from .base_handler import BaseEventHandler
from .progress_handler import ProgressHandler
