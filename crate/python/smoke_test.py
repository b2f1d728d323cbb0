#!/usr/bin/env python3
"""Smoke test for the obsdisc_py extension module.

Builds are produced by `cargo build -p obsdisc-py` (optionally --release);
this script locates the cdylib, stages it under an importable name, and
drives the main entry points end to end.

Run from the repository root:

    cargo build -p obsdisc-py
    python3 python/smoke_test.py
"""

import math
import shutil
import sys
import tempfile
from pathlib import Path

REPO_ROOT = Path(__file__).resolve().parent.parent


def stage_module() -> None:
    """Copies the built cdylib next to a name `import obsdisc_py` accepts."""
    candidates = [
        REPO_ROOT / "target" / profile / name
        for profile in ("release", "debug")
        for name in ("libobsdisc_py.so", "libobsdisc_py.dylib", "obsdisc_py.dll")
    ]
    built = next((p for p in candidates if p.exists()), None)
    if built is None:
        sys.exit("no built extension found; run `cargo build -p obsdisc-py` first")
    stage = Path(tempfile.mkdtemp(prefix="obsdisc-py-"))
    suffix = ".pyd" if built.suffix == ".dll" else ".so"
    shutil.copy2(built, stage / f"obsdisc_py{suffix}")
    sys.path.insert(0, str(stage))
    print(f"staged {built} -> {stage}")


stage_module()

import obsdisc_py as od  # noqa: E402


def check(label: str, condition: bool) -> None:
    if not condition:
        sys.exit(f"FAIL: {label}")
    print(f"ok: {label}")


# --- observables and validation -------------------------------------------

sigma_z = od.povm_from_bloch([0.0, 0.0, 1.0])
sigma_x = od.povm_from_bloch([1.0, 0.0, 0.0])
check("bloch observables have dimension 2 and two outcomes",
      sigma_z.dim == 2 and sigma_z.outcome_count == 2)

passed, worst, detail = sigma_z.validate()
check(f"sharp observable validates (worst violation {worst:.1e})", passed)

effects = sigma_z.effects()
check("effects round-trip as nested complex lists",
      isinstance(effects[0][0][0], complex) and abs(effects[0][0][0] - 1.0) < 1e-12)

broken = od.Povm([[[1, 0], [0, 1]], [[1, 0], [0, 1]]])
passed, worst, _ = broken.validate()
check("doubled identity fails validation with violation 1", not passed and abs(worst - 1.0) < 1e-12)

angle = od.bloch_angle([0.0, 0.0, 1.0], [1.0, 0.0, 0.0])
check("bloch angle of z and x is pi/2", abs(angle - math.pi / 2) < 1e-12)

# --- orbit bookkeeping ------------------------------------------------------

patterns = od.enumerate_patterns(3, 3)
check("three uses of a three-outcome apparatus give 5 orbits",
      [name for name, _ in patterns] == ["xxx", "xxy", "xyx", "xyy", "xyz"])
name, canonical = od.canonicalize([2, 2, 0], alphabet_size=3)
check("canonicalize relabels 220 to xxy", name == "xxy" and canonical == [0, 0, 1])

# --- perfect discrimination -------------------------------------------------

result = od.check_perfect_discrimination([sigma_z, sigma_x], 2)
check("orthogonal sharp pair is two-shot discriminable", result.feasible)
check("conclusion table routes xx to the first observable",
      result.table == {"xx": 0, "xy": 1})
probe = result.probe
expected = [1 / math.sqrt(2), 0.0, 0.0, -1 / math.sqrt(2)]
overlap = abs(sum(p.conjugate() * e for p, e in zip(probe, expected)))
check("probe is the antisymmetric-like combination up to phase", overlap > 1 - 1e-9)

theta = math.pi / 4
tilted = od.povm_from_bloch([math.sin(theta), 0.0, math.cos(theta)])
result = od.check_perfect_discrimination([sigma_z, tilted], 2)
check("oblique sharp pair is infeasible with a clear margin",
      not result.feasible and result.min_eigenvalue > 1e-6)

# --- unambiguous identification ---------------------------------------------

theta = math.pi / 3
b_vec = [math.sin(theta), 0.0, math.cos(theta)]
outcome = od.optimize(
    [sigma_z, od.povm_from_bloch(b_vec)],
    priors=[0.5, 0.5],
    targets=[0],
    shots=2,
    mode="ui",
)
closed = od.closed_form_identification([0.0, 0.0, 1.0], 0.5, b_vec)
check("optimizer reproduces the closed-form value 0.375",
      abs(outcome.success_probability - 0.375) < 1e-9
      and abs(outcome.success_probability - closed) < 1e-9)
check("region table marks the mixed pattern inconclusive",
      outcome.table == {"xx": 0, "xy": None})

# --- four-shot scheme and simulation ----------------------------------------

four = od.four_shot_discrimination([0.0, 0.0, 1.0], b_vec, priors=(0.3, 0.7))
check("four-shot success is sin^2(theta), independent of priors",
      abs(four.success_probability - math.sin(theta) ** 2) < 1e-9)

histogram = od.simulate(sigma_z, four.probe, 4, 20000, seed=11)
check("simulation returns a pattern-name histogram summing to the trials",
      sum(histogram.values()) == 20000)
wrong = [p for p, c in four.table.items() if c == 1 and histogram.get(p, 0) > 0]
check("no sampled pattern lands in the wrong conclusion region", not wrong)

# --- error mapping ------------------------------------------------------------

try:
    od.povm_from_bloch([2.0, 0.0, 0.0])
    sys.exit("FAIL: oversized bloch vector should raise ValueError")
except ValueError:
    print("ok: oversized bloch vector raises ValueError")

try:
    od.optimize([sigma_z, sigma_x], mode="nope")
    sys.exit("FAIL: unknown mode should raise ValueError")
except ValueError:
    print("ok: unknown mode raises ValueError")

print("smoke test passed")
