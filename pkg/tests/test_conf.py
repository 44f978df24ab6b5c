"""
Tests the conf.py module.
"""
import os
import sys
import runpy
from unittest import mock

import pytest


def test_conf_module_load():
    from mfcas import conf

    assert conf is not None
    assert conf.__file__ is not None


@mock.patch.dict(os.environ, {}, clear=True)
def test_conf_entries():
    from mfcas import conf
    import importlib

    importlib.reload(conf)

    assert conf.ROOT_DIR is not None
    assert conf.ROOT_DIR != ""

    assert conf.RESULTS_DIR is not None
    assert conf.RESULTS_DIR != ""

    assert conf.GENERAL is not None
    assert len(conf.GENERAL) > 0
    assert conf.GENERAL["N_JOBS"] == 1
    assert conf.GENERAL["LONG_CHECKS"] == 0
    assert conf.GENERAL["RANDOM_SEED"] == 0
    assert conf.GENERAL["LOG_CONFIG_FILE"].exists()

    assert conf.CATALOG["DATA_DIR"].name == "data"
    assert conf.CATALOG["CHECKSUMS_FILE"].exists()

    assert conf.REDUCTION["MAX_BOUND"] == 16


def test_conf_main():
    t = runpy.run_module("mfcas.conf", run_name="__main__")
    assert t is not None
    assert "print_vars" in t
    assert "MFCAS_ROOT_DIR" in t["print_vars"]
    assert "MFCAS_RESULTS_DIR" in t["print_vars"]
    assert "MFCAS_GENERAL_N_JOBS" in t["print_vars"]
    assert "MFCAS_CATALOG_DATA_DIR" in t["print_vars"]


@pytest.mark.skipif(
    sys.platform.startswith("win"),
    reason="exporting variables is only supported in non-Windows platforms",
)
def test_conf_export_variables():
    from pathlib import Path
    import subprocess
    from mfcas import conf

    conf_filepath = Path(conf.__file__).resolve()
    assert conf_filepath is not None
    assert conf_filepath.exists()

    r = subprocess.run([sys.executable, conf_filepath], stdout=subprocess.PIPE)
    assert r.returncode == 0
    exports = r.stdout.decode("utf-8").splitlines()
    assert len(exports) == 9
    assert all(line.startswith("export MFCAS_") for line in exports)
    assert any(line.startswith("export MFCAS_REDUCTION_MAX_BOUND=") for line in exports)

    # plain and nested (dict) variables
    r = subprocess.run(
        f"eval `{sys.executable} {conf_filepath}` && echo $MFCAS_ROOT_DIR $MFCAS_GENERAL_N_JOBS",
        shell=True,
        stdout=subprocess.PIPE,
    )
    assert r.returncode == 0
    root_dir, n_jobs = r.stdout.decode("utf-8").split()
    assert root_dir.startswith("/")
    assert int(n_jobs) > 0


@mock.patch.dict(
    os.environ,
    {"MFCAS_N_JOBS": "3", "MFCAS_LONG": "yes", "MFCAS_SEED": "42", "MFCAS_MAX_REDUCTION_BOUND": "8"},
)
def test_conf_environment_variables():
    from mfcas import conf
    import importlib

    importlib.reload(conf)
    try:
        assert conf.GENERAL["N_JOBS"] == 3
        assert conf.GENERAL["LONG_CHECKS"] == 1
        assert conf.GENERAL["RANDOM_SEED"] == 42
        assert conf.REDUCTION["MAX_BOUND"] == 8
    finally:
        with mock.patch.dict(os.environ, {}, clear=True):
            importlib.reload(conf)


@mock.patch.dict(os.environ, {"MFCAS_LONG": "0"})
def test_conf_long_checks_disabled():
    from mfcas import conf
    import importlib

    importlib.reload(conf)
    assert conf.GENERAL["LONG_CHECKS"] == 0


@mock.patch.dict(os.environ, {"MFCAS_CATALOG": "/tmp/some/catalog"})
def test_conf_with_catalog_dir():
    from mfcas import conf
    import importlib

    importlib.reload(conf)
    try:
        assert str(conf.CATALOG["DATA_DIR"]) == "/tmp/some/catalog"
        assert conf.CATALOG["CHECKSUMS_FILE"].parent == conf.CATALOG["DATA_DIR"]
    finally:
        with mock.patch.dict(os.environ, {}, clear=True):
            importlib.reload(conf)


@mock.patch.dict(os.environ, {"MFCAS_N_JOBS": ""})
def test_conf_mfcas_n_jobs_is_empty_string():
    from mfcas import conf
    import importlib

    importlib.reload(conf)

    assert conf.GENERAL is not None
    assert len(conf.GENERAL) > 0
    assert conf.GENERAL["N_JOBS"] is not None
    assert conf.GENERAL["N_JOBS"] > 0
