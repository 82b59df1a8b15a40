import pytest

import corpus_samples


@pytest.fixture(scope="session")
def glimpse_doc():
    return corpus_samples.load_fixture("glimpse.txt")


@pytest.fixture(scope="session")
def phone_call_doc():
    return corpus_samples.load_fixture("phone_call.txt")


@pytest.fixture(scope="session")
def company_doc():
    return corpus_samples.load_fixture("company_notice.txt")
