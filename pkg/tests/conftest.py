import pytest

from quasihopf.fields import QQ, PrimeField

FIELDS = [QQ, PrimeField(10007)]
FIELD_IDS = ["rationals", "fp10007"]


@pytest.fixture(params=FIELDS, ids=FIELD_IDS)
def field(request):
    return request.param
