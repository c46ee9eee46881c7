"""Experiment runner: ``qthin validate|noise|assess --config <path> --out <dir>``.

Configs are flat ``key = value`` text files (``#`` starts a comment); unknown
keys are rejected.  Every run writes a ``manifest.json`` embedding the fully
resolved configuration, and ``--config`` also accepts such a manifest, which
re-runs it and reproduces identical outputs in exact mode.

Exit codes: 0 success, 2 configuration error, 3 no feasible thinning in
validate mode.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import fileio
from .errors import (
    ConfigError,
    EmptySidelobeRegionError,
    NoFeasibleThinningError,
    NoPeakError,
)
from .metrics import (
    PatternMatch,
    SllMask,
    mask_violations,
    mean_sll,
    peak_sll,
    sidelobe_region,
)
from .noise import NoiseSpec, add_noise
from .pattern import cyclic_shift, default_u_grid, normalized_power_pattern
from .qsim import MAX_QUBITS, build_iqft, new_statevector
from .reference import ReferenceSpec
from .thinning import (
    mask_string,
    prepare_input_state,
    rank_probabilities,
    read_probabilities,
    synthesize,
)

EXPERIMENTS = ("validate", "noise", "assess")


@dataclass(frozen=True)
class ExperimentConfig:
    experiment: str
    n: int
    d: float
    l: int
    seed: int
    mode: str  # "exact" | "shots"
    shots: int | None
    indices: tuple[int, ...] | None
    eta: tuple[float, ...] | None
    snr_db: tuple[float, ...] | None
    noise_seeds: int | None
    sll_ref_db: tuple[float, ...] | None
    reference_sll_db: float | None

    def reference_spec(self) -> ReferenceSpec:
        if self.experiment in ("validate", "noise"):
            return ReferenceSpec("layout", self.n, self.d, indices=self.indices)
        return ReferenceSpec("chebyshev", self.n, self.d, sll_db=self.reference_sll_db)

    def readout_shots(self) -> int | None:
        return self.shots if self.mode == "shots" else None

    def resolved_dict(self) -> dict:
        return {
            "experiment": self.experiment,
            "n": self.n,
            "d": self.d,
            "l": self.l,
            "seed": self.seed,
            "mode": self.mode,
            "shots": self.shots,
            "indices": None if self.indices is None else list(self.indices),
            "eta": None if self.eta is None else list(self.eta),
            "snr_db": None if self.snr_db is None else list(self.snr_db),
            "noise_seeds": self.noise_seeds,
            "sll_ref_db": None if self.sll_ref_db is None else list(self.sll_ref_db),
            "reference_sll_db": self.reference_sll_db,
        }


def _as_int(key, value) -> int:
    try:
        return int(str(value).strip())
    except (TypeError, ValueError):
        raise ConfigError(f"key {key!r}: expected an integer, got {value!r}") from None


def _as_float(key, value) -> float:
    try:
        return float(str(value).strip())
    except (TypeError, ValueError):
        raise ConfigError(f"key {key!r}: expected a number, got {value!r}") from None


def _as_list(value) -> list:
    if isinstance(value, (list, tuple)):
        return list(value)
    parts = [p.strip() for p in str(value).split(",")]
    return [p for p in parts if p]


def _as_float_list(key, value) -> tuple[float, ...]:
    items = tuple(_as_float(key, v) for v in _as_list(value))
    if not items:
        raise ConfigError(f"key {key!r}: list must be nonempty")
    return items


def _as_int_list(key, value) -> tuple[int, ...]:
    items = tuple(_as_int(key, v) for v in _as_list(value))
    if not items:
        raise ConfigError(f"key {key!r}: list must be nonempty")
    return items


_ALLOWED_KEYS = {
    "validate": {"experiment", "n", "d", "l", "seed", "mode", "shots", "indices", "eta"},
    "noise": {
        "experiment", "n", "d", "l", "seed", "mode", "shots", "indices",
        "snr_db", "noise_seeds",
    },
    "assess": {
        "experiment", "n", "d", "l", "seed", "mode", "shots", "eta",
        "sll_ref_db", "reference_sll_db",
    },
}


def _read_raw_config(path: Path) -> dict:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            manifest = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"invalid JSON in {path}: {exc}") from None
        raw = manifest.get("config", manifest)
        if not isinstance(raw, dict):
            raise ConfigError(f"manifest {path} carries no config object")
        return {k: v for k, v in raw.items() if v is not None}
    raw = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {line!r}")
        key, value = line.split("=", 1)
        key = key.strip().lower()
        if key in raw:
            raise ConfigError(f"{path}:{lineno}: duplicate key {key!r}")
        raw[key] = value.strip()
    return raw


def parse_config(path) -> ExperimentConfig:
    """Load and validate an experiment config (or a manifest.json)."""
    raw = _read_raw_config(Path(path))
    experiment = str(raw.get("experiment", "")).strip().lower()
    if experiment not in EXPERIMENTS:
        raise ConfigError(
            f"key 'experiment' must be one of {', '.join(EXPERIMENTS)}, got {experiment!r}"
        )
    allowed = _ALLOWED_KEYS[experiment]
    unknown = set(raw) - allowed
    if unknown:
        raise ConfigError(
            f"unknown key(s) for experiment {experiment!r}: {', '.join(sorted(unknown))}"
        )
    for key in ("n", "d"):
        if key not in raw:
            raise ConfigError(f"missing required key {key!r}")

    n = _as_int("n", raw["n"])
    if n < 2 or n & (n - 1):
        raise ConfigError(f"key 'n': must be a power of two >= 2, got {n}")
    l_derived = n.bit_length() - 1
    if "l" in raw and _as_int("l", raw["l"]) != l_derived:
        raise ConfigError(f"key 'l': expected log2(n) = {l_derived}, got {raw['l']}")
    d = _as_float("d", raw["d"])
    if not d > 0:
        raise ConfigError(f"key 'd': spacing must be positive, got {d}")
    seed = _as_int("seed", raw.get("seed", 0))
    mode = str(raw.get("mode", "exact")).strip().lower()
    if mode not in ("exact", "shots"):
        raise ConfigError(f"key 'mode': must be 'exact' or 'shots', got {mode!r}")
    shots = None
    if mode == "shots":
        if "shots" not in raw:
            raise ConfigError("mode 'shots' requires the key 'shots'")
        shots = _as_int("shots", raw["shots"])
        if shots < 1:
            raise ConfigError(f"key 'shots': must be >= 1, got {shots}")
    elif "shots" in raw:
        raise ConfigError("key 'shots' is only valid with mode = shots")

    indices = eta = snr_db = sll_ref_db = None
    noise_seeds = reference_sll_db = None
    if experiment in ("validate", "noise"):
        if "indices" not in raw:
            raise ConfigError(f"experiment {experiment!r} requires the key 'indices'")
        indices = _as_int_list("indices", raw["indices"])
        bad = [i for i in indices if not 0 <= i < n]
        if bad:
            raise ConfigError(f"key 'indices': out of range [0, {n}): {bad}")
        if len(set(indices)) != len(indices):
            raise ConfigError("key 'indices': duplicate entries")
    if experiment == "validate":
        if "eta" not in raw:
            raise ConfigError("experiment 'validate' requires the key 'eta'")
        eta = _as_float_list("eta", raw["eta"])
        if len(eta) != 1:
            raise ConfigError("experiment 'validate' takes a single eta value")
    if experiment == "noise":
        if "snr_db" not in raw:
            raise ConfigError("experiment 'noise' requires the key 'snr_db'")
        snr_db = _as_float_list("snr_db", raw["snr_db"])
        noise_seeds = _as_int("noise_seeds", raw.get("noise_seeds", 10))
        if noise_seeds < 1:
            raise ConfigError(f"key 'noise_seeds': must be >= 1, got {noise_seeds}")
    if experiment == "assess":
        for key in ("eta", "sll_ref_db"):
            if key not in raw:
                raise ConfigError(f"experiment 'assess' requires the key {key!r}")
        eta = _as_float_list("eta", raw["eta"])
        sll_ref_db = _as_float_list("sll_ref_db", raw["sll_ref_db"])
        if any(s >= 0 for s in sll_ref_db):
            raise ConfigError("key 'sll_ref_db': mask levels must be negative dB")
        # the input reference defaults to the deepest requirement in the sweep
        reference_sll_db = _as_float(
            "reference_sll_db", raw.get("reference_sll_db", min(sll_ref_db))
        )
        if reference_sll_db >= 0:
            raise ConfigError("key 'reference_sll_db': must be negative dB")
        if any(e <= 0 for e in eta):
            raise ConfigError("key 'eta': thresholds must be positive")
    if experiment == "validate" and eta[0] <= 0:
        raise ConfigError("key 'eta': threshold must be positive")

    return ExperimentConfig(
        experiment=experiment,
        n=n,
        d=d,
        l=l_derived,
        seed=seed,
        mode=mode,
        shots=shots,
        indices=indices,
        eta=eta,
        snr_db=snr_db,
        noise_seeds=noise_seeds,
        sll_ref_db=sll_ref_db,
        reference_sll_db=reference_sll_db,
    )


def _layout_metrics(layout, u_grid, sll_ref_db=None) -> dict:
    """Sidelobe metrics bundle; None fields when the region is degenerate."""
    out = {"sll_db": None, "mean_sll_db": None, "violations": None}
    try:
        power = normalized_power_pattern(layout, u_grid)
        omega = sidelobe_region(power, u_grid)
        out["sll_db"] = peak_sll(power, u_grid, omega)
        out["mean_sll_db"] = mean_sll(power, u_grid, omega)
        if sll_ref_db is not None:
            out["violations"] = mask_violations(power, u_grid, omega, sll_ref_db)
    except (NoPeakError, EmptySidelobeRegionError):
        pass
    return out


def _write_layout_json(path, result, u_grid, sll_ref_db=None) -> dict:
    payload = result.to_dict()
    payload["tau_percent"] = payload["tau"]
    payload["mask"] = mask_string(result.layout.thinning)
    payload.update(_layout_metrics(result.layout, u_grid, sll_ref_db))
    fileio.write_json(path, payload)
    return payload


def _write_manifest(out_dir: Path, config: ExperimentConfig, results: dict, outputs: list) -> None:
    fileio.write_json(
        out_dir / "manifest.json",
        {
            "command": config.experiment,
            "config": config.resolved_dict(),
            "results": results,
            "outputs": sorted(outputs),
        },
    )


def run_validate(config: ExperimentConfig, out_dir: Path) -> dict:
    """Full pipeline on a known layout; reports whether it was recovered."""
    reference = config.reference_spec().build()
    state = prepare_input_state(reference)
    p = read_probabilities(state, shots=config.readout_shots(), seed=config.seed)
    u_grid = default_u_grid(config.n)
    result = synthesize(
        p, reference, PatternMatch(reference, u_grid), config.eta[0], mode="isophoric"
    )
    recovered_set = set(result.layout.active_indices.tolist())
    recovered = recovered_set == set(config.indices)

    fileio.write_probabilities_csv(out_dir / "probs.csv", p)
    fileio.write_sorted_probabilities_csv(out_dir / "sorted_probs.csv", result.ranking.sorted_p)
    _write_layout_json(out_dir / "layout_validate.json", result, u_grid)
    fileio.write_text(out_dir / "layout_validate.mask", mask_string(result.layout.thinning))
    power = normalized_power_pattern(result.layout, u_grid)
    fileio.write_pattern_db_csv(out_dir / "pattern_validate.csv", u_grid, power)

    results = {"k": result.k, "psi": result.psi, "recovered": recovered}
    outputs = [
        "probs.csv", "sorted_probs.csv", "layout_validate.json",
        "layout_validate.mask", "pattern_validate.csv",
    ]
    _write_manifest(out_dir, config, results, outputs)
    return results


def run_noise(config: ExperimentConfig, out_dir: Path) -> dict:
    """Noise sweep: sorted probabilities per (SNR, seed) plus rank-gap summary."""
    reference = config.reference_spec().build()
    shifted = cyclic_shift(reference.samples)
    a_hat = shifted / np.linalg.norm(shifted)
    k_ref = len(config.indices)
    reference_set = set(config.indices)

    rows = []
    summary = {}
    for snr in config.snr_db:
        gap_ratios = []
        top_matches = []
        for offset in range(config.noise_seeds):
            seed = config.seed + offset
            noisy = add_noise(a_hat, NoiseSpec(snr, seed))
            state = new_statevector(noisy)
            p = read_probabilities(state, shots=config.readout_shots(), seed=seed)
            ranking = rank_probabilities(p)
            rows += [
                (snr, seed, t, ranking.sorted_p[t]) for t in range(config.n)
            ]
            top = ranking.sorted_p[k_ref - 1]
            floor = ranking.sorted_p[k_ref] if k_ref < config.n else 0.0
            gap_ratios.append(float(top / floor) if floor > 0 else math.inf)
            top_matches.append(set(ranking.order[:k_ref].tolist()) == reference_set)
        summary[f"{snr:g}"] = {
            "min_rank_gap_ratio": min(gap_ratios),
            "actives_always_top": all(top_matches),
        }

    fileio.write_noise_sweep_csv(out_dir / "sorted_probs.csv", rows)
    results = {"k_reference": k_ref, "per_snr": summary}
    _write_manifest(out_dir, config, results, ["sorted_probs.csv"])
    return results


def _cell_id(sll_ref_db: float, eta: float) -> str:
    return f"sll{sll_ref_db:g}_eta{eta:g}"


def run_assess(config: ExperimentConfig, out_dir: Path) -> dict:
    """Mask-depth x threshold sweep producing a performance table.

    One Chebyshev input reference (at reference_sll_db) feeds every cell; the
    sweep varies only the mask depth and threshold.  Infeasible cells are
    recorded and the run continues.
    """
    reference = config.reference_spec().build()
    state = prepare_input_state(reference)
    p = read_probabilities(state, shots=config.readout_shots(), seed=config.seed)
    u_grid = default_u_grid(config.n)

    table = []
    cells = {}
    outputs = []
    for sll in sorted(config.sll_ref_db, reverse=True):
        for eta in sorted(config.eta, reverse=True):
            cell = _cell_id(sll, eta)
            try:
                result = synthesize(p, reference, SllMask(sll, u_grid), eta, mode="amplitude")
            except NoFeasibleThinningError as exc:
                cells[cell] = {"status": "infeasible", "error": str(exc)}
                table.append({"sll_ref_db": sll, "eta": eta, "status": "infeasible"})
                continue
            payload = _write_layout_json(
                out_dir / f"layout_{cell}.json", result, u_grid, sll_ref_db=sll
            )
            fileio.write_text(
                out_dir / f"layout_{cell}.mask", mask_string(result.layout.thinning)
            )
            power = normalized_power_pattern(result.layout, u_grid)
            fileio.write_pattern_db_csv(out_dir / f"pattern_{cell}.csv", u_grid, power)
            outputs += [f"layout_{cell}.json", f"layout_{cell}.mask", f"pattern_{cell}.csv"]
            row = {
                "sll_ref_db": sll,
                "eta": eta,
                "k": result.k,
                "tau_percent": payload["tau"],
                "mean_sll_db": payload["mean_sll_db"],
                "sll_db": payload["sll_db"],
                "violations": payload["violations"],
                "status": "ok",
            }
            table.append(row)
            cells[cell] = {"status": "ok", "k": result.k, "psi": result.psi}

    columns = [
        "sll_ref_db", "eta", "k", "tau_percent", "mean_sll_db", "sll_db",
        "violations", "status",
    ]
    lines = [",".join(columns)]
    for row in table:
        lines.append(
            ",".join("" if row.get(c) is None else f"{row.get(c)}" for c in columns)
        )
    with open(out_dir / "table.csv", "w", encoding="utf-8", newline="\n") as f:
        f.write("\n".join(lines) + "\n")

    results = {"cells": cells}
    _write_manifest(out_dir, config, results, outputs + ["table.csv"])
    return results


_RUNNERS = {"validate": run_validate, "noise": run_noise, "assess": run_assess}


@dataclass(frozen=True)
class SpeedupReport:
    """Analytic operation-count comparison (nothing here is a measurement)."""

    n: int
    l: int
    ratio_n_over_ln_n: float
    classical_fft_ops: float
    iqft_gate_count: int


def _gate_count(l: int) -> int:
    return l + l * (l - 1) // 2 + l // 2


def report_speedup(n: int) -> SpeedupReport:
    """n/ln(n) plus the operation-count pair (n*log2(n) vs IQFT gate total)."""
    if n < 2 or n & (n - 1):
        raise ValueError(f"n must be a power of two >= 2, got {n}")
    l = n.bit_length() - 1
    gate_count = len(build_iqft(l)) if l <= MAX_QUBITS else _gate_count(l)
    return SpeedupReport(
        n=n,
        l=l,
        ratio_n_over_ln_n=n / math.log(n),
        classical_fft_ops=float(n * l),
        iqft_gate_count=gate_count,
    )


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="qthin",
        description="Thinned-array synthesis experiments on a statevector simulator.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, text in (
        ("validate", "recover a known thinned layout from its pattern samples"),
        ("noise", "sweep input SNR and report sorted probabilities"),
        ("assess", "sweep mask depth and threshold, emit a performance table"),
    ):
        sp = sub.add_parser(name, help=text)
        sp.add_argument("--config", required=True, type=Path, help="config file or manifest.json")
        sp.add_argument("--out", required=True, type=Path, help="output directory")
    sp = sub.add_parser("speedup", help="print the analytic operation-count comparison")
    sp.add_argument("--n", required=True, type=int, help="number of lattice points (power of two)")
    args = parser.parse_args(argv)

    if args.command == "speedup":
        try:
            report = report_speedup(args.n)
        except ValueError as exc:
            print(f"config error: {exc}", file=sys.stderr)
            return 2
        print(f"n = {report.n} (L = {report.l})")
        print(f"analytic speed-up n/ln(n): {report.ratio_n_over_ln_n:.2f} (not measured)")
        print(f"classical fft operation count n*log2(n): {report.classical_fft_ops:.0f}")
        print(f"iqft gate count L + L(L-1)/2 + floor(L/2): {report.iqft_gate_count}")
        return 0

    try:
        config = parse_config(args.config)
        if config.experiment != args.command:
            raise ConfigError(
                f"config is for experiment {config.experiment!r}, "
                f"but the command is {args.command!r}"
            )
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2

    out_dir = args.out
    out_dir.mkdir(parents=True, exist_ok=True)
    try:
        results = _RUNNERS[config.experiment](config, out_dir)
    except NoFeasibleThinningError as exc:
        print(f"no feasible thinning: {exc}", file=sys.stderr)
        return 3
    print(json.dumps({"command": config.experiment, "results": results}, sort_keys=True))
    return 0


if __name__ == "__main__":
    sys.exit(main())
