"""Smoke test for the geophase Python extension.

Uses an installed `geophase_py` if there is one (e.g. after `maturin develop`), otherwise
loads the library built by `cargo build -p geophase-py --release --features extension-module`.
"""

import cmath
import importlib.machinery
import importlib.util
import math
import pathlib
import sys


def load():
    try:
        import geophase_py

        return geophase_py
    except ImportError:
        pass
    root = pathlib.Path(__file__).resolve().parent.parent
    for profile in ("release", "debug"):
        lib = root / "target" / profile / "libgeophase_py.so"
        if lib.exists():
            loader = importlib.machinery.ExtensionFileLoader("geophase_py", str(lib))
            spec = importlib.util.spec_from_file_location("geophase_py", lib, loader=loader)
            module = importlib.util.module_from_spec(spec)
            loader.exec_module(module)
            return module
    sys.exit("geophase_py not found; build it with "
             "`cargo build -p geophase-py --release --features extension-module`")


def close(a, b, tol):
    assert abs(a - b) < tol, f"{a} vs {b}"


def main():
    gp = load()

    z = gp.StateVector([1, 0])
    x = gp.StateVector([1, 1])
    y = gp.StateVector([1, 1j])
    close(x.norm(), 1.0, 1e-12)
    close(gp.overlap(z, x), 1 / math.sqrt(2), 1e-12)
    close(gp.closed_loop_phase([z, x, y]), -math.pi / 4, 1e-12)
    close(cmath.phase(gp.bargmann_invariant(z, x, y)), math.pi / 4, 1e-12)
    close(gp.fubini_study_distance(z, gp.StateVector([0, 1])), math.pi / 2, 1e-12)

    gauged = gp.apply_gauge([z, x, y], [0.3, -1.2, 2.5])
    close(gp.closed_loop_phase(gauged), -math.pi / 4, 1e-12)

    for eps in (1e-3, -1e-3):
        for path in (gp.polarization_sweep(eps, 2001), gp.junction_crossing(eps, 2001)):
            jumps = gp.detect_pi_jump(gp.projection_phase_trace(path))
            assert len(jumps) == 1, jumps
            assert jumps[0].sign == (1 if eps > 0 else -1)
            close(abs(jumps[0].magnitude), math.pi, 1e-2)

    close(gp.gouy_asymptotic_total([1.0, 1.0], 1e3), math.pi, 1e-6)
    zs = [-10 + 0.05 * k for k in range(401)]
    trace = gp.mode_gouy_trace(zs)
    close(trace[-1], math.atan(10), 1e-3)

    assert [f for _, f in gp.fluxoid_states(1, -1, 1)] == [-0.5, 0.5, 1.5]
    assert [f for _, f in gp.fluxoid_states(0, -1, 1)] == [-1.0, 0.0, 1.0]
    minima = gp.ring_minima(10.0)
    ground = min(minima, key=lambda m: m[1])
    close(abs(ground[2]), 0.4539643, 1e-6)
    fluxes = gp.half_flux_limit([2.0, 10.0, 100.0])
    assert fluxes == sorted(fluxes) and fluxes[-1] < 0.5

    try:
        gp.polarization_sweep(0.7)
    except ValueError as e:
        assert "epsilon" in str(e)
    else:
        raise AssertionError("invalid epsilon accepted")
    try:
        gp.cumulative_pancharatnam([z, gp.StateVector([0, 1])])
    except ArithmeticError:
        pass
    else:
        raise AssertionError("orthogonal step accepted")

    print("python smoke test passed")


if __name__ == "__main__":
    main()
