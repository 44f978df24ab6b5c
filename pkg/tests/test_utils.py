"""
Tests the utility_functions.py module.
"""
import os
import sys
from pathlib import Path
from unittest import mock

import pytest

DATA_DIR = Path(__file__).resolve().parent / "data"


def reload_package(root_module):
    """
    Reloads all modules given a root module. It deletes loaded modules from sys.modules and reloads them again.
    This is helpful in scenarios where you want to test what happens if a certain module does not have access
    to other modules.

    Taken and adapted from here: https://stackoverflow.com/a/2918951/3120414
    """
    from importlib import import_module
    import types

    package_name = root_module.__name__

    # get a reference to each loaded module
    loaded_package_modules = dict(
        [
            (key, value)
            for key, value in sys.modules.items()
            if key.startswith(package_name) and isinstance(value, types.ModuleType)
        ]
    )

    # delete references to these loaded modules from sys.modules
    for key in loaded_package_modules:
        del sys.modules[key]

    # load each of the modules again
    for key in loaded_package_modules:
        import_module(key)


def test_utils_module_load():
    from mfcas import utils

    assert utils is not None
    assert utils.__file__ is not None


def test_utils_module_loads_without_log():
    # the kernel modules must import mfcas.utils even if mfcas.log (and its
    # yaml dependency) is not available.
    sys.modules["mfcas.log"] = None

    try:
        from mfcas import utils

        reload_package(utils)

        assert utils is not None
        assert utils.__file__ is not None
        reloaded = sys.modules["mfcas.utils.utility_functions"]
        assert reloaded.logger is None
        assert reloaded.md5_matches("0" * 32, DATA_DIR / "file.txt") is False
    finally:
        del sys.modules["mfcas.log"]
        from mfcas import utils

        reload_package(utils)


#
# checksums
#
def test_md5sum():
    from mfcas.utils import md5sum

    assert md5sum(DATA_DIR / "file.txt") == "4acd80b502319ce7c44eaf490338894c"
    assert md5sum(DATA_DIR / "file2.txt") == "fb319cc56653b713a8c7a54aa92f6efd"


def test_md5_matches():
    from mfcas.utils import md5_matches

    assert md5_matches("4acd80b502319ce7c44eaf490338894c", DATA_DIR / "file.txt")
    assert md5_matches("4acd80b502319ce7c44eaf490338894c", str(DATA_DIR / "file.txt"))
    assert not md5_matches("4acd80b502319ce7c44eaf490338894c", DATA_DIR / "file2.txt")


def test_md5_matches_missing_file():
    from mfcas.utils import md5_matches

    assert not md5_matches("4acd80b502319ce7c44eaf490338894c", DATA_DIR / "missing.txt")


#
# workers
#
@mock.patch.object(os, "cpu_count", return_value=8)
def test_get_n_workers(_):
    from mfcas.utils import get_n_workers

    assert get_n_workers(None) == 8
    assert get_n_workers(1) == 1
    assert get_n_workers(3) == 3
    assert get_n_workers(-1) == 7
    assert get_n_workers(-7) == 1


@mock.patch.object(os, "cpu_count", return_value=8)
@pytest.mark.parametrize("n_jobs", [0, -8, -10])
def test_get_n_workers_invalid(_, n_jobs):
    from mfcas.utils import get_n_workers

    with pytest.raises(ValueError):
        get_n_workers(n_jobs)


@mock.patch.object(os, "cpu_count", return_value=None)
def test_get_n_workers_unknown_cpu_count(_):
    from mfcas.utils import get_n_workers

    with pytest.raises(ValueError):
        get_n_workers(None)
    assert get_n_workers(2) == 2


def test_dummy_executor():
    from concurrent.futures import as_completed

    from mfcas.utils import DummyExecutor

    with DummyExecutor(max_workers=4) as executor:
        assert list(executor.map(abs, [-1, 2, -3])) == [1, 2, 3]

        ok = executor.submit(pow, 2, 10)
        failed = executor.submit(int, "not a number")
        assert [f.done() for f in as_completed([ok, failed])] == [True, True]

    assert ok.result() == 1024
    with pytest.raises(ValueError):
        failed.result()


#
# names and subsets
#
def test_fresh_name():
    from mfcas.utils import fresh_name

    assert fresh_name("y", {"x"}) == "y"
    assert fresh_name("y", {"y"}) == "y1"
    assert fresh_name("y", ["y", "y1", "y3"]) == "y2"


def test_powerset():
    from mfcas.utils import powerset

    assert list(powerset([])) == [()]
    assert list(powerset([0, 1, 2])) == [
        (),
        (0,),
        (1,),
        (2,),
        (0, 1),
        (0, 2),
        (1, 2),
        (0, 1, 2),
    ]
    assert len(list(powerset(range(5)))) == 32
