from mfcas.utils.utility_functions import *  # noqa: F403, F401
