#bin/run_verifier.py

import sys
import signal
import logging
from typing import Sequence, Tuple

from utils.logger import setup_logging
from app.ui import cli

# Set up logging
logger = logging.getLogger(__name__)

EXIT_INTERRUPTED = 130

def signal_handler(sig, frame):
    """Turn SIGTERM into the same path as Ctrl-C."""
    logger.info(f"Received signal {sig}, stopping")
    raise KeyboardInterrupt

def logging_options(argv: Sequence[str]) -> Tuple[bool, bool]:
    """Read --verbose and --no-log-file before argparse runs, so logging is ready first."""
    verbose = any(arg in ('-v', '--verbose') for arg in argv)
    log_to_file = '--no-log-file' not in argv
    return verbose, log_to_file

def main():
    """Main entry point for the sodcheck command."""
    verbose, log_to_file = logging_options(sys.argv[1:])
    setup_logging(verbose=verbose, log_to_file=log_to_file)

    signal.signal(signal.SIGTERM, signal_handler)

    try:
        code = cli.main(sys.argv[1:])
    except KeyboardInterrupt:
        logger.info("Run interrupted by user")
        sys.exit(EXIT_INTERRUPTED)
    except Exception as e:
        logger.error(f"Verifier failed: {e}", exc_info=True)
        sys.exit(1)
    sys.exit(code)

if __name__ == "__main__":
    main()
