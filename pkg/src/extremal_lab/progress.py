"""Progress reporting for degree sweeps and multistart runs."""

import logging
import threading
from typing import Callable, List, Optional

logger = logging.getLogger(__name__)


class ProgressTracker:
    """Track and report progress of long-running sweeps."""

    def __init__(
        self,
        total_steps: int = 100,
        label: str = "",
        sink: Optional[Callable[[str], None]] = None,
    ):
        self.total_steps = max(1, total_steps)
        self.label = label
        self.sink = sink
        self.current_step = 0
        self.current_operation = ""
        self.messages: List[str] = []
        self._lock = threading.Lock()

    def update(self, step: int, operation: str = "") -> None:
        """
        Update progress and log it.

        Args:
            step: Current step number
            operation: Description of current operation
        """
        with self._lock:
            self.current_step = min(step, self.total_steps)
            if operation:
                self.current_operation = operation
            percentage = (self.current_step / self.total_steps) * 100
            prefix = f"{self.label}: " if self.label else ""
            message = f"{prefix}Progress: {percentage:.1f}% - {self.current_operation}"
            self.messages.append(message)
        logger.info(message)
        if self.sink is not None:
            self.sink(message)

    def increment(self, operation: str = "") -> None:
        """Advance by one step; safe to call from worker threads."""
        with self._lock:
            step = self.current_step + 1
        self.update(step, operation)

    def complete(self, message: str = "Operation completed") -> None:
        self.update(self.total_steps, message)

    @property
    def percentage(self) -> float:
        return 100.0 * self.current_step / self.total_steps
