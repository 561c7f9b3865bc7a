#bin/main.py

#!/usr/bin/env python3
"""
sodcheck - Main Entry Point

Sets up the Python path and calls the run_verifier module.
"""

import sys
from pathlib import Path

# Add the parent directory to the Python path
current_dir = Path(__file__).resolve().parent
parent_dir = current_dir.parent
sys.path.insert(0, str(parent_dir))

# Import after path setup
from bin import run_verifier

if __name__ == "__main__":
    run_verifier.main()
