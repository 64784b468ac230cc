import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture(scope="session")
def fermat_report():
    from relcor.studies import fermat

    return fermat.run()
