from app.core.services.operator_service import OperatorService
from app.core.services.service_locator import ServiceLocator
from app.core.utils.thread_manager import ThreadManager
from app.domain.models import BracketConfig


def test_service_locator_initialization(locator, grid):
    """Test that ServiceLocator initializes all services correctly."""
    assert locator.get_weight_service() is not None
    assert locator.get_quadrature_service().grid == grid
    assert locator.get_space_service().grid == grid
    assert isinstance(locator.get_operator_service(), OperatorService)
    assert locator.get_oracle_service() is not None
    assert locator.get_criteria_service().weights is locator.get_weight_service()
    assert locator.get_thread_manager() is ThreadManager.instance()

    # Test singleton pattern
    locator2 = ServiceLocator()
    assert locator is locator2, "ServiceLocator should be a singleton"


def test_configure_rebuilds_services(locator, grid):
    old = locator.get_operator_service()
    brackets = BracketConfig().override(multiplier_cap=5.0)
    locator.configure(grid.override(a_levels=4), brackets, workers=2)
    assert locator.get_operator_service() is not old
    assert locator.get_operator_service().grid.a_levels == 4
    assert locator.get_operator_service().brackets.multiplier_cap == 5.0
    assert locator.get_thread_manager().workers == 2
    # the operator service shares the locator's building blocks
    assert locator.get_operator_service().weights is locator.get_weight_service()
