import pytest

from subgf import fixed_point_seed, parse_substitution

RULES = {
    "fib": "a->ab\nb->a",
    "xyz": "x->xyzy\ny->xy\nz->zy",
    "abab": "a->ab\nb->ab",
    "thue_morse": "a->ab\nb->ba",
    "rst": "r->rstt\ns->rsttr\nt->rstr",
}


@pytest.fixture(scope="session")
def fib():
    return parse_substitution(RULES["fib"])


@pytest.fixture(scope="session")
def fib_seed(fib):
    return fixed_point_seed(fib)


@pytest.fixture(scope="session")
def xyz():
    return parse_substitution(RULES["xyz"])


@pytest.fixture(scope="session")
def xyz_seed(xyz):
    return fixed_point_seed(xyz)


@pytest.fixture(scope="session")
def abab():
    return parse_substitution(RULES["abab"])


@pytest.fixture(scope="session")
def abab_seed(abab):
    return fixed_point_seed(abab)


@pytest.fixture(scope="session")
def thue_morse():
    return parse_substitution(RULES["thue_morse"])


@pytest.fixture(scope="session")
def thue_morse_seed(thue_morse):
    return fixed_point_seed(thue_morse)


@pytest.fixture(scope="session")
def rst():
    return parse_substitution(RULES["rst"])


@pytest.fixture(scope="session")
def corpus(fib, xyz, abab, thue_morse):
    return {"fib": fib, "xyz": xyz, "abab": abab, "thue_morse": thue_morse}
