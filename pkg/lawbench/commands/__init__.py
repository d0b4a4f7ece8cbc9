from . import checks, repro  # noqa: F401
