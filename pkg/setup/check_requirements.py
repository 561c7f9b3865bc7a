# setup/check_requirements.py

#!/usr/bin/env python3
# Script to check if the system meets all requirements for the verifier

import sys
import importlib.util

REQUIRED_PACKAGES = ["numpy", "psutil", "sympy"]
TEST_PACKAGES = ["pytest", "hypothesis"]

def check_python_version():
    """Check if Python version is 3.9 or higher."""
    major, minor = sys.version_info[:2]
    if (major, minor) < (3, 9):
        print("❌ Python 3.9 or higher is required.")
        print(f"   Current version: {sys.version}")
        return False
    print(f"✅ Python version: {sys.version.split()[0]}")
    return True

def missing_packages(packages):
    return [package for package in packages if importlib.util.find_spec(package) is None]

def check_dependencies():
    """Check if the runtime dependencies are installed."""
    missing = missing_packages(REQUIRED_PACKAGES)
    if missing:
        print("❌ Missing required packages:")
        for package in missing:
            print(f"   - {package}")
        print("\nRun 'pip install -r requirements.txt' to install all dependencies.")
        return False
    print("✅ All required packages are installed.")
    return True

def check_test_dependencies():
    """Test packages are optional; only report them."""
    missing = missing_packages(TEST_PACKAGES)
    if missing:
        print(f"ℹ️ Test packages not installed: {', '.join(missing)}")
    else:
        print("✅ Test packages are installed.")
    return True

def check_cpu_cores():
    """Report the worker count a sweep would use."""
    try:
        import psutil
        cores = psutil.cpu_count(logical=False) or 2
        print(f"✅ Physical CPU cores: {cores}")
        return True
    except Exception as e:
        print(f"❌ Error checking CPU cores: {e}")
        return False

def main():
    """Run all checks and report results."""
    print("\n=== sodcheck Requirements Check ===\n")

    checks = [
        check_python_version(),
        check_dependencies(),
        check_test_dependencies(),
        check_cpu_cores(),
    ]

    print("\n=== Summary ===")
    if all(checks):
        print("✅ Your system meets all requirements!")
        print("   Run a check with: python bin/main.py verify -m 2 -n 2 -d 4")
    else:
        print("❌ Your system does not meet all requirements.")
        print("   Please address the issues above before running the verifier.")

    print("\n")
    return all(checks)

if __name__ == "__main__":
    sys.exit(0 if main() else 1)
