import pytest
from fastapi.testclient import TestClient

from sectsum_service.app import create_app
from sectsum_service.config import ServiceConfig


@pytest.fixture(scope="session")
def client() -> TestClient:
    app = create_app(ServiceConfig(max_batch=16))
    return TestClient(app)
