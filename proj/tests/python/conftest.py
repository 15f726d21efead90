import os
import sys

import pytest

# the build tree exports the extension location so the tests run without an
# installed wheel
module_dir = os.environ.get("HFL_MODULE_DIR")
if module_dir and module_dir not in sys.path:
    sys.path.insert(0, module_dir)


@pytest.fixture(scope="session")
def hfl():
    return pytest.importorskip("_hfl")


@pytest.fixture(scope="session")
def cli_path():
    path = os.environ.get("HFL_CLI")
    if not path or not os.path.exists(path):
        pytest.skip("HFL_CLI not set")
    return path
