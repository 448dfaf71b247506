"""Batch command-line front end.

Subcommands: ``state make``, ``evolve``, ``williamson``, ``entropy``,
``wigner``, ``coupled-example``.  Structured results are JSON; Wigner
grids are CSV with ``# key=value`` preamble lines.  All numeric output is
locale independent and reproducible byte for byte.

Exit codes: 0 success, 2 usage/parse errors, 3 unphysical states or
numeric-domain failures, 4 violated semantic preconditions (e.g.
entanglement entropy of a mixed state).

Conventions: dimensionless quadratures with vacuum covariance = identity
(hbar = kB = 1); ``coupled-example`` additionally accepts explicit m and
omega for its dimensionful Hamiltonian.  State files default to the
pairwise ("qpqp") quadrature ordering and carry the tag explicitly.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from typing import Sequence

import numpy as np

from . import dynamics, entropy, states, wigner, williamson
from .errors import (
    DimensionError,
    NoGroundStateError,
    NotPureError,
    OrderingError,
    UnphysicalStateError,
)
from .symplectic import Ordering, check_symplectic, make_symplectic_form

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_PRECONDITION = 4

_ORDERING_TAGS = {"qpqp": Ordering.PAIRWISE, "qqpp": Ordering.BLOCKWISE}


class FileFormatError(Exception):
    """Input file could not be parsed into the expected structure."""


def _parse_complex(text: str) -> complex:
    try:
        return complex(text.strip().replace("i", "j"))
    except ValueError as exc:
        raise FileFormatError(f"cannot parse complex number from {text!r}") from exc


def state_to_dict(state: states.GaussianState, metadata: dict | None = None) -> dict:
    return {
        "n_modes": state.n_modes,
        "ordering": state.ordering.value,
        "mean": (state.mean + 0.0).tolist(),
        "cov": (state.cov + 0.0).tolist(),
        "metadata": metadata or {},
    }


def state_from_dict(data: dict) -> states.GaussianState:
    try:
        n_modes = int(data["n_modes"])
        ordering = _ORDERING_TAGS[data.get("ordering", "qpqp")]
        mean = np.asarray(data["mean"], dtype=float)
        cov = np.asarray(data["cov"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise FileFormatError(f"invalid state file: {exc}") from exc
    return states.GaussianState(n_modes=n_modes, mean=mean, cov=cov, ordering=ordering)


def load_state(path: str) -> states.GaussianState:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise FileFormatError(f"cannot read state file {path}: {exc}") from exc
    return state_from_dict(data)


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")


def _json_dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def cmd_state_make(args) -> int:
    kind = args.kind
    metadata: dict = {"kind": kind}
    if kind == "vacuum":
        state = states.vacuum(args.modes)
        metadata["modes"] = args.modes
    elif kind == "thermal":
        if args.nu is None:
            raise FileFormatError("thermal requires --nu")
        state = states.thermal(args.nu)
        metadata["nu"] = args.nu
    elif kind == "coherent":
        if args.alpha is None:
            raise FileFormatError("coherent requires --alpha")
        alphas = [_parse_complex(tok) for tok in args.alpha.split(",")]
        state = states.coherent(alphas)
        metadata["alpha"] = [str(a) for a in alphas]
    elif kind == "squeezed":
        if args.r is None:
            raise FileFormatError("squeezed requires --r")
        state = states.squeezed_vacuum(args.r, args.theta)
        metadata.update(r=args.r, theta=args.theta)
    elif kind == "tmsv":
        if args.r is None:
            raise FileFormatError("tmsv requires --r")
        state = states.two_mode_squeezed_vacuum(args.r, args.theta)
        metadata.update(r=args.r, theta=args.theta)
    else:  # pragma: no cover - argparse restricts choices
        raise FileFormatError(f"unknown state kind {kind!r}")
    _emit(_json_dump(state_to_dict(state, metadata)), args.out)
    return EXIT_OK


def _load_hamiltonian(path: str) -> dynamics.QuadraticHamiltonian:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        f_bar = np.asarray(data["f_bar"], dtype=float)
        alpha = np.asarray(data["alpha"], dtype=float) if "alpha" in data else None
        ordering = _ORDERING_TAGS[data.get("ordering", "qpqp")]
        n_modes = int(data.get("n_modes", f_bar.shape[0] // 2))
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise FileFormatError(f"cannot read hamiltonian file {path}: {exc}") from exc
    return dynamics.QuadraticHamiltonian(
        n_modes=n_modes, f_bar=f_bar, alpha=alpha, ordering=ordering
    )


def cmd_evolve(args) -> int:
    state = load_state(args.state)
    if (args.hamiltonian is None) == (args.builtin is None):
        raise FileFormatError("provide exactly one of --hamiltonian or --builtin")
    if args.hamiltonian is not None:
        ham = _load_hamiltonian(args.hamiltonian)
    elif args.builtin == "squeeze":
        ham = dynamics.squeeze_hamiltonian(args.r, args.theta)
    elif args.builtin == "tms":
        ham = dynamics.two_mode_squeeze_hamiltonian(args.r, args.theta)
    else:  # rotate
        ham = dynamics.rotation_hamiltonian(state.n_modes)
    if ham.n_modes != state.n_modes:
        raise FileFormatError(
            f"hamiltonian acts on {ham.n_modes} modes, state has {state.n_modes}"
        )
    channel = dynamics.generate_channel(ham, args.time)
    if args.verbose:
        form = make_symplectic_form(ham.n_modes, ham.ordering)
        residual = check_symplectic(channel.s, form).residual
        print(f"symplectic residual: {residual:.3e}", file=sys.stderr)
    evolved = dynamics.apply_channel(channel, state)
    metadata = {"evolved_by": args.builtin or args.hamiltonian, "time": args.time}
    _emit(_json_dump(state_to_dict(evolved, metadata)), args.out)
    return EXIT_OK


def cmd_williamson(args) -> int:
    state = load_state(args.state)
    form = make_symplectic_form(state.n_modes, state.ordering)
    dec = williamson.williamson_decompose(state.cov, form)
    payload = {
        "nu": dec.nu.tolist(),
        "sigma": dec.sigma.tolist(),
        "residuals": {
            "diagonalization": dec.residual_diag,
            "symplectic": dec.residual_symplectic,
        },
    }
    _emit(_json_dump(payload), args.out)
    return EXIT_OK


def cmd_entropy(args) -> int:
    state = load_state(args.state)
    if args.subsystem:
        modes = [int(tok) for tok in args.subsystem.split(",")]
        result = entropy.entanglement_entropy(state, modes, args.base)
        kind = "entanglement"
    else:
        result = entropy.von_neumann_entropy(state, args.base)
        kind = "von_neumann"
    payload = {
        "kind": kind,
        "log_base": result.log_base,
        "total": result.total,
        "per_mode": result.per_mode.tolist(),
    }
    _emit(_json_dump(payload), args.out)
    return EXIT_OK


def _parse_range(text: str) -> tuple[float, float]:
    seps = [c for c in (":", ",") if c in text]
    if not seps:
        raise FileFormatError(f"range {text!r} must look like MIN:MAX")
    lo, hi = text.split(seps[0], 1)
    try:
        return float(lo), float(hi)
    except ValueError as exc:
        raise FileFormatError(f"cannot parse range {text!r}") from exc


def grid_to_csv(w: wigner.WignerGrid, descriptor: str) -> str:
    g = w.grid
    lines = [
        f"# state={descriptor}",
        f"# q_min={g.q_min:.17g}",
        f"# q_max={g.q_max:.17g}",
        f"# p_min={g.p_min:.17g}",
        f"# p_max={g.p_max:.17g}",
        f"# n_q={g.n_q}",
        f"# n_p={g.n_p}",
        f"# hbar={g.hbar:.17g}",
        "q,p,w",
    ]
    q, p, vals = g.q, g.p, w.values
    for i in range(g.n_q):
        qi = q[i]
        row = vals[i]
        for j in range(g.n_p):
            lines.append(f"{qi:.17g},{p[j]:.17g},{row[j]:.17g}")
    return "\n".join(lines)


def cmd_wigner(args) -> int:
    sources = [args.state is not None, args.fock is not None, args.coherent is not None]
    if sum(sources) != 1:
        raise FileFormatError("provide exactly one of STATE, --fock or --coherent")
    q_min, q_max = _parse_range(args.qrange)
    p_min, p_max = _parse_range(args.prange)
    grid = wigner.PhaseSpaceGrid(
        q_min=q_min,
        q_max=q_max,
        p_min=p_min,
        p_max=p_max,
        n_q=args.nq,
        n_p=args.np,
        hbar=args.hbar,
    )
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        if args.fock is not None:
            w = wigner.eval_fock(args.fock, grid)
            descriptor = f"fock:{args.fock}"
        elif args.coherent is not None:
            alpha = _parse_complex(args.coherent)
            w = wigner.eval_gaussian(states.coherent(alpha), grid)
            descriptor = f"coherent:{args.coherent}"
        else:
            state = load_state(args.state)
            w = wigner.eval_gaussian(state, grid)
            descriptor = f"state:{args.state}"
    for item in caught:
        print(f"warning: {item.message}", file=sys.stderr)
    _emit(grid_to_csv(w, descriptor), args.out)
    if args.summary:
        bounds = wigner.purity_and_bounds(w)
        summary = {
            "normalization": wigner.normalization(w),
            "purity_integral": bounds.purity_integral,
            "max_abs": bounds.max_abs,
            "min_value": bounds.min_value,
            "negativity_volume": bounds.negativity_volume,
        }
        sys.stdout.write(_json_dump(summary) + "\n")
    return EXIT_OK


def cmd_coupled_example(args) -> int:
    m, omega, lam = args.m, args.omega, args.lam
    if m <= 0 or omega <= 0:
        raise FileFormatError("m and omega must be positive")
    stiffness = 1.0 + 4.0 * lam / (m * omega**2)
    if stiffness <= 0:
        raise NoGroundStateError(
            f"coupling lambda={lam} destabilizes the system (1 + 4 lambda/(m omega^2) <= 0)"
        )
    alpha = float(np.sqrt(stiffness))
    # pairwise (q1, p1, q2, p2) Hamiltonian matrix with explicit units
    f = np.array(
        [
            [m * omega**2 + 2 * lam, 0.0, -2 * lam, 0.0],
            [0.0, 1.0 / m, 0.0, 0.0],
            [-2 * lam, 0.0, m * omega**2 + 2 * lam, 0.0],
            [0.0, 0.0, 0.0, 1.0 / m],
        ]
    )
    spectrum = williamson.symplectic_spectrum(f)
    ham = dynamics.QuadraticHamiltonian(n_modes=2, f_bar=f)
    ground = williamson.normal_mode_ground_state(ham)
    reduced = states.partial_trace(ground, [0])
    nu_reduced = float(reduced.symplectic_spectrum()[0])
    s_e = entropy.entanglement_entropy(ground, [0], args.base)
    payload = {
        "m": m,
        "omega": omega,
        "lambda": lam,
        "alpha": alpha,
        "normal_frequencies": [omega, omega * alpha],
        "symplectic_spectrum_of_hamiltonian": spectrum.tolist(),
        "ground_state_cov": ground.cov.tolist(),
        "nu_reduced": nu_reduced,
        "nu_reduced_formula": float((1.0 + alpha) / (2.0 * np.sqrt(alpha))),
        "entanglement_entropy": s_e.total,
        "log_base": s_e.log_base,
    }
    _emit(_json_dump(payload), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gaussphase",
        description="Gaussian quantum mechanics in phase space.",
        epilog=(
            "Covariance convention: dimensionless quadratures, vacuum covariance = "
            "identity. Squeezing conventions follow the generator normalization in "
            "which the two-mode squeeze channel at unit time produces the r-parameter "
            "two-mode squeezed vacuum covariance; see README for the factor-of-two "
            "relation to the Fock-ladder convention."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_state = sub.add_parser("state", help="create and serialize Gaussian states")
    state_sub = p_state.add_subparsers(dest="state_command", required=True)
    p_make = state_sub.add_parser("make", help="construct a canonical state")
    p_make.add_argument("kind", choices=["vacuum", "thermal", "coherent", "squeezed", "tmsv"])
    p_make.add_argument("--modes", type=int, default=1, help="mode count (vacuum)")
    p_make.add_argument("--nu", type=float, help="thermal symplectic eigenvalue (>= 1)")
    p_make.add_argument("--alpha", help="complex amplitude(s), e.g. '1+0.5i' or '1,2i'")
    p_make.add_argument("--r", type=float, help="squeezing magnitude")
    p_make.add_argument("--theta", type=float, default=0.0, help="squeezing phase")
    p_make.add_argument("--out", help="output path (default: stdout)")
    p_make.set_defaults(func=cmd_state_make)

    p_evolve = sub.add_parser("evolve", help="apply a quadratic-Hamiltonian channel")
    p_evolve.add_argument("state", help="input StateFile (JSON)")
    p_evolve.add_argument("--hamiltonian", help="JSON file with f_bar (and optional alpha)")
    p_evolve.add_argument("--builtin", choices=["squeeze", "tms", "rotate"])
    p_evolve.add_argument("--r", type=float, default=1.0)
    p_evolve.add_argument("--theta", type=float, default=0.0)
    p_evolve.add_argument("--time", type=float, required=True)
    p_evolve.add_argument("--verbose", action="store_true")
    p_evolve.add_argument("--out")
    p_evolve.set_defaults(func=cmd_evolve)

    p_will = sub.add_parser("williamson", help="symplectic diagonalization of a state")
    p_will.add_argument("state")
    p_will.add_argument("--out")
    p_will.set_defaults(func=cmd_williamson)

    p_ent = sub.add_parser("entropy", help="von Neumann / entanglement entropy")
    p_ent.add_argument("state")
    p_ent.add_argument("--subsystem", help="comma-separated mode indices of the partition")
    p_ent.add_argument("--base", choices=["e", "2"], default="e")
    p_ent.add_argument("--out")
    p_ent.set_defaults(func=cmd_entropy)

    p_wig = sub.add_parser("wigner", help="sample a Wigner function to CSV")
    p_wig.add_argument("state", nargs="?", help="StateFile (single mode)")
    p_wig.add_argument("--fock", type=int, help="Fock level n")
    p_wig.add_argument("--coherent", help="complex amplitude, e.g. '1+0i'")
    p_wig.add_argument("--qrange", default="-6:6")
    p_wig.add_argument("--prange", default="-6:6")
    p_wig.add_argument("--nq", type=int, default=201)
    p_wig.add_argument("--np", type=int, default=201)
    p_wig.add_argument("--hbar", type=float, default=1.0)
    p_wig.add_argument("--summary", action="store_true")
    p_wig.add_argument("--out")
    p_wig.set_defaults(func=cmd_wigner)

    p_cpl = sub.add_parser(
        "coupled-example", help="two coupled oscillators: spectrum, ground state, entropy"
    )
    p_cpl.add_argument("--m", type=float, default=1.0)
    p_cpl.add_argument("--omega", type=float, default=1.0)
    p_cpl.add_argument("--lambda", dest="lam", type=float, required=True)
    p_cpl.add_argument("--base", choices=["e", "2"], default="e")
    p_cpl.add_argument("--out")
    p_cpl.set_defaults(func=cmd_coupled_example)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NotPureError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (FileFormatError, DimensionError, OrderingError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UnphysicalStateError, NoGroundStateError, np.linalg.LinAlgError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
