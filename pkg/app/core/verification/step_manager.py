import logging
import time
import traceback

from app.domain.errors import ToolkitError
from app.domain.models import SuiteSummary


class VerificationStepManager:
    """Runs verification steps in sequence and collects their records."""

    def __init__(self, suite: str):
        self.suite = suite
        self.steps = []
        self.completed_steps = []
        self.timings = {}
        self.logger = logging.getLogger(__name__)

    def add_step(self, step):
        """Add a step to the suite."""
        self.steps.append(step)

    def execute_steps(self) -> SuiteSummary:
        """Execute all steps; a failing step is recorded and the rest still run."""
        summary = SuiteSummary(self.suite)
        total_steps = len(self.steps)
        for i, step in enumerate(self.steps):
            self.logger.info(f"[{self.suite} {i + 1}/{total_steps}] Executing: {step.description}")
            started = time.perf_counter()
            try:
                records = step.execute()
                step.completed = True
                self.completed_steps.append(step)
                summary.records.extend(records)
                failed = [r.name for r in records if not r.passed]
                if failed:
                    self.logger.warning(f"{step.description}: failed assertions {failed}")
            except ToolkitError as e:
                self.logger.error(f"ERROR in {step.description}: {type(e).__name__}: {e}")
                summary.errors.append(f"{step.description}: {type(e).__name__}: {e}")
            except Exception as e:
                self.logger.error(f"ERROR in {step.description}: {e}")
                self.logger.debug(traceback.format_exc())
                summary.errors.append(f"{step.description}: {type(e).__name__}: {e}")
            finally:
                self.timings[step.description] = time.perf_counter() - started

        status = "passed" if summary.passed else "failed"
        self.logger.info(f"Suite {self.suite} {status}: {len(summary.records)} assertions, "
                         f"{len(summary.errors)} errors")
        return summary
