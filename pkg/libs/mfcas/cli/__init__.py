from mfcas.cli.report import (  # noqa: F401
    Check,
    CheckResult,
    RunReport,
    run_check,
    run_checks,
)
from mfcas.cli.suites import SUITES, suite_checks  # noqa: F401
from mfcas.cli.commands import (  # noqa: F401
    build_parser,
    cmd_compute,
    cmd_inspect,
    cmd_verify,
    main,
)
