"""
Gets user settings (from settings.py module) and create the final configuration values.
All the rest of the code reads configuration values from this module.
This file IS NOT intended to be modified by the user.
"""
import os
import tempfile
from pathlib import Path

from mfcas import settings


def _env(name: str):
    """Returns the value of an environment variable, or None if unset or empty."""
    value = os.environ.get(name)
    if value is None or value.strip() == "":
        return None
    return value


def _as_bool(value) -> bool:
    if isinstance(value, str):
        return value.strip().lower() in ("1", "true", "yes", "on")
    return bool(value)


#
# General file structure
#
ROOT_DIR = _env("MFCAS_ROOT_DIR")
if ROOT_DIR is None and hasattr(settings, "ROOT_DIR"):
    ROOT_DIR = settings.ROOT_DIR

if ROOT_DIR is None:
    ROOT_DIR = str(Path(tempfile.gettempdir(), "mfcas").resolve())

# RESULTS_DIR stores verification reports
RESULTS_DIR = Path(ROOT_DIR, "results").resolve()

#
# General
#
GENERAL = {}

GENERAL["LOG_CONFIG_FILE"] = Path(
    Path(__file__).resolve().parent, "log_config.yaml"
).resolve()

# CPU usage
options = [
    _env("MFCAS_N_JOBS"),
    getattr(settings, "N_JOBS", None),
    1,
]
GENERAL["N_JOBS"] = next(int(opt) for opt in options if opt is not None)

options = [
    _env("MFCAS_LONG"),
    getattr(settings, "LONG_CHECKS", None),
    False,
]
GENERAL["LONG_CHECKS"] = int(
    _as_bool(next(opt for opt in options if opt is not None))
)

options = [
    _env("MFCAS_SEED"),
    getattr(settings, "RANDOM_SEED", None),
    0,
]
GENERAL["RANDOM_SEED"] = next(int(opt) for opt in options if opt is not None)

#
# Catalog
#
CATALOG = {}

options = [
    _env("MFCAS_CATALOG"),
    getattr(settings, "CATALOG_DIR", None),
    Path(Path(__file__).resolve().parent, "adecat", "data"),
]
CATALOG["DATA_DIR"] = Path(next(opt for opt in options if opt is not None)).resolve()
CATALOG["CHECKSUMS_FILE"] = Path(CATALOG["DATA_DIR"], "checksums.json").resolve()

#
# Finite-rank reduction
#
REDUCTION = {}

options = [
    _env("MFCAS_MAX_REDUCTION_BOUND"),
    getattr(settings, "MAX_REDUCTION_BOUND", None),
    16,
]
REDUCTION["MAX_BOUND"] = next(int(opt) for opt in options if opt is not None)


if __name__ == "__main__":
    # if this script is run, then it exports the configuration as environment
    # variables (for bash, etc)
    from pathlib import PurePath

    def print_conf(conf_dict):
        for var_name, var_value in conf_dict.items():
            if var_value is None:
                continue

            if isinstance(var_value, (str, int, PurePath)):
                new_var_name = f"MFCAS_{var_name}"
                print(f'export {new_var_name}="{str(var_value)}"')
                yield new_var_name
            elif isinstance(var_value, dict):
                new_dict = {f"{var_name}_{k}": v for k, v in var_value.items()}
                for x in print_conf(new_dict):
                    yield x
            else:
                raise ValueError(f"Configuration type not understood: {var_name}")

    local_variables = {
        k: v for k, v in locals().items() if not k.startswith("__") and k == k.upper()
    }

    print_vars = list(print_conf(local_variables))
