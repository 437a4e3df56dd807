import pytest


@pytest.fixture(autouse=True)
def _no_budget_env(monkeypatch):
    """Keep the environment's budget scale out of test arithmetic."""
    monkeypatch.delenv("SQUARELAB_BUDGET", raising=False)
