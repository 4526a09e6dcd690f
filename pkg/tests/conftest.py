import os
import sys

import pytest

# Add project root to path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from app.core.services.service_locator import ServiceLocator
from app.core.services.weight_service import WeightService
from app.core.utils.error_manager import ErrorManager
from app.domain.models import BracketConfig, GridConfig
from app.infrastructure.scenario_loader import ScenarioLoader


@pytest.fixture(scope="session")
def grid():
    return GridConfig.desk()


@pytest.fixture(scope="session")
def weight_service():
    return WeightService(BracketConfig())


@pytest.fixture(scope="session")
def loader(weight_service, grid):
    """Scenario loader sharing classified profiles across the session."""
    return ScenarioLoader(weight_service, grid)


@pytest.fixture(scope="session")
def std1(loader):
    return loader.profile("std:alpha=1")


@pytest.fixture
def locator(grid):
    """The service locator reset to the desk grid; commands under test may reconfigure it."""
    return ServiceLocator().configure(grid, BracketConfig(), workers=1)


@pytest.fixture(autouse=True)
def error_log(tmp_path, monkeypatch):
    """Keep error logs of every test inside its temporary directory."""
    monkeypatch.setattr(ErrorManager, "_instance", ErrorManager(log_dir=str(tmp_path / "logs")))
