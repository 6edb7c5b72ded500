# stdlib
import sys
import warnings

# spikedse absolute
import spikedse.logger as log

warnings.filterwarnings("ignore", category=DeprecationWarning)

log.add(sys.stderr, level="WARNING")
