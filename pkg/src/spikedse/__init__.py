# stdlib
import os
import sys

# spikedse relative
from . import logger  # noqa: F401

logger.add(sys.stderr, level="CRITICAL")

# torch and numpy each spawn a thread pool per sweep worker
for _var in ("OMP_NUM_THREADS", "MKL_NUM_THREADS", "OPENBLAS_NUM_THREADS"):
    os.environ.setdefault(_var, "2")
