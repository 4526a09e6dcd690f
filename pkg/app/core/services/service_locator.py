"""
Service locator for dependency injection and service creation.
"""
from typing import Optional

from app.domain.models import BracketConfig, GridConfig

from app.core.services.weight_service import WeightService
from app.core.services.quadrature_service import QuadratureService
from app.core.services.space_service import SpaceService
from app.core.services.operator_service import OperatorService
from app.core.services.oracle_service import OracleService
from app.core.services.criteria_service import CriteriaService

from app.core.utils.error_manager import ErrorManager
from app.core.utils.thread_manager import ThreadManager


class ServiceLocator:
    """Service locator to manage dependencies and services."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super(ServiceLocator, cls).__new__(cls)
            cls._instance._initialize_services(GridConfig.full(), BracketConfig())
        return cls._instance

    def configure(self, grid: Optional[GridConfig] = None, brackets: Optional[BracketConfig] = None,
                  workers: Optional[int] = None) -> "ServiceLocator":
        """Rebuild the services for a new grid or bracket configuration."""
        if workers is not None:
            ThreadManager.instance().set_workers(workers)
        self._initialize_services(grid or self.grid, brackets or self.brackets)
        return self

    def _initialize_services(self, grid: GridConfig, brackets: BracketConfig):
        """Initialize all services and dependencies."""
        self.grid = grid
        self.brackets = brackets

        # Initialize singletons
        self.error_manager = ErrorManager.instance()
        self.thread_manager = ThreadManager.instance()

        # Create building-block services
        self.weight_service = WeightService(brackets)
        self.quadrature_service = QuadratureService(grid)
        self.space_service = SpaceService(grid)

        # Create operator-level services
        self.operator_service = OperatorService(
            grid,
            brackets,
            self.weight_service,
            self.space_service,
            self.quadrature_service,
            self.thread_manager
        )
        self.oracle_service = OracleService(grid)
        self.criteria_service = CriteriaService(grid, brackets, self.weight_service)

    def get_weight_service(self) -> WeightService:
        """Get the weight service."""
        return self.weight_service

    def get_quadrature_service(self) -> QuadratureService:
        """Get the quadrature service."""
        return self.quadrature_service

    def get_space_service(self) -> SpaceService:
        """Get the space service."""
        return self.space_service

    def get_operator_service(self) -> OperatorService:
        """Get the operator functional service."""
        return self.operator_service

    def get_oracle_service(self) -> OracleService:
        """Get the matrix oracle service."""
        return self.oracle_service

    def get_criteria_service(self) -> CriteriaService:
        """Get the radial criteria service."""
        return self.criteria_service

    def get_error_manager(self) -> ErrorManager:
        """Get the error manager."""
        return self.error_manager

    def get_thread_manager(self) -> ThreadManager:
        """Get the thread manager."""
        return self.thread_manager
