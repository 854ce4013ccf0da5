#!/usr/bin/env python3
"""
Validation script to check if the setup is correct.
Run this after installation to verify all components are working.
"""
import sys


def check_imports():
    """Check if all modules can be imported."""
    errors = []

    try:
        from cartan.jet_algebra import Jet, variable_jets
        print("✓ Jet kernel imported successfully")
    except Exception as e:
        errors.append(f"✗ Error importing jet kernel: {e}")

    try:
        from cartan.expr_lang import parse, eval_jet
        print("✓ Expression language imported successfully")
    except Exception as e:
        errors.append(f"✗ Error importing expression language: {e}")

    try:
        from cartan.graph_engine import cartan_invariant_graph
        from cartan.implicit_engine import cartan_locus_iw
        print("✓ Invariant engines imported successfully")
    except Exception as e:
        errors.append(f"✗ Error importing invariant engines: {e}")

    try:
        from grauert.catalog import MODEL_IDS, get_model
        print(f"✓ Model catalog imported successfully ({len(MODEL_IDS)} models)")
    except Exception as e:
        errors.append(f"✗ Error importing model catalog: {e}")

    try:
        from grauert.scanner import scan_grid
        from grauert.cross_check import cross_check
        print("✓ Scanner imported successfully")
    except Exception as e:
        errors.append(f"✗ Error importing scanner: {e}")

    return errors


def check_dependencies():
    """Check if all required dependencies are installed."""
    required = [
        'numpy',
        'scipy',
        'pandas',
        'pydantic',
        'dotenv',
    ]

    errors = []
    for package in required:
        try:
            __import__(package)
            print(f"✓ {package} installed")
        except ImportError:
            errors.append(f"✗ {package} not installed")

    try:
        __import__('pyarrow')
        print("✓ pyarrow installed")
    except ImportError:
        print("⚠ pyarrow not installed (Parquet output unavailable, CSV still works)")

    return errors


def check_env():
    """Check environment configuration."""
    from pathlib import Path

    errors = []

    if not Path('.env.example').exists():
        errors.append("✗ .env.example not found")
    else:
        print("✓ .env.example exists")

    try:
        from cartan.settings import load_tolerances
        tol = load_tolerances()
        print(f"✓ Tolerances loaded (levi_tol={tol.levi_tol:g}, zero_threshold={tol.zero_threshold:g})")
    except Exception as e:
        errors.append(f"✗ Invalid CARTAN_* tolerance override: {e}")

    return errors


def check_smoke():
    """Evaluate one known value of the hyperbolic tube."""
    errors = []
    try:
        from grauert.catalog import get_model
        result = get_model("hyperbolic", epsilon=0.5).chart("v-graph").evaluate((1.0, 0.0, 0.0))
        if abs(result.bracket - (-8.4375)) > 1e-8:
            errors.append(f"✗ Unexpected bracket 6J = {result.bracket} (expected -8.4375)")
        else:
            print("✓ Hyperbolic tube bracket 6J matches -8.4375")
    except Exception as e:
        errors.append(f"✗ Smoke evaluation failed: {e}")
    return errors


def main():
    """Run all validation checks."""
    print("=" * 60)
    print("Validating Cartan Umbilic Setup")
    print("=" * 60)

    print("\n1. Checking dependencies...")
    dep_errors = check_dependencies()

    print("\n2. Checking imports...")
    import_errors = check_imports()

    print("\n3. Checking environment...")
    env_errors = check_env()

    print("\n4. Smoke evaluation...")
    smoke_errors = check_smoke() if not import_errors else []

    all_errors = dep_errors + import_errors + env_errors + smoke_errors

    print("\n" + "=" * 60)
    if all_errors:
        print("❌ Validation failed with errors:")
        for error in all_errors:
            print(f"  {error}")
        print("\nPlease fix the errors and run validation again.")
        sys.exit(1)
    else:
        print("✅ All validation checks passed!")
        print("\nYou can now run:")
        print("  python scripts/umbilic.py models")
    print("=" * 60)


if __name__ == "__main__":
    main()
