"""Plain-text Hamiltonian and state files.

Hamiltonian: one ``<coefficient> <pauli-word>`` per line, ``#`` starts a
comment, blank lines are ignored.  State: one ``<re> <im>`` amplitude per
line, ``2**N`` lines in basis-index order (qubit 0 is the most significant bit).
"""
from __future__ import annotations

import warnings
from pathlib import Path

import numpy as np

from .pauli import PauliOperator, PauliString, PureState


class ParseError(ValueError):
    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        where = f"line {lineno}: " if lineno is not None else ""
        super().__init__(where + message)


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def parse_hamiltonian(text: str) -> PauliOperator:
    terms = []
    n = None
    for lineno, line in _content_lines(text):
        parts = line.split()
        if len(parts) != 2:
            raise ParseError("expected '<coefficient> <pauli-word>'", lineno)
        try:
            coeff = float(parts[0])
        except ValueError:
            raise ParseError(f"bad coefficient {parts[0]!r}", lineno) from None
        if not np.isfinite(coeff):
            raise ParseError("coefficient must be finite", lineno)
        try:
            p = PauliString.from_label(parts[1])
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from None
        if n is None:
            n = p.n_qubits
        elif p.n_qubits != n:
            raise ParseError(f"word length {p.n_qubits} differs from {n}", lineno)
        if p.is_identity():
            warnings.warn(f"line {lineno}: dropping identity term", stacklevel=2)
            continue
        terms.append((p, coeff))
    if n is None:
        raise ParseError("no terms found")
    return PauliOperator(n, terms)


def format_hamiltonian(h: PauliOperator) -> str:
    return "".join(f"{float(c)!r} {p.label}\n" for p, c in h.items())


def parse_state(text: str) -> PureState:
    """Parse amplitudes; a norm off by less than 1e-6 is renormalized."""
    amps = []
    for lineno, line in _content_lines(text):
        parts = line.split()
        if len(parts) not in (1, 2):
            raise ParseError("expected '<re> <im>'", lineno)
        try:
            amps.append(complex(float(parts[0]), float(parts[1]) if len(parts) == 2 else 0.0))
        except ValueError:
            raise ParseError(f"bad amplitude {line!r}", lineno) from None
    size = len(amps)
    if size < 2 or size & (size - 1):
        raise ParseError(f"amplitude count {size} is not a power of two >= 2")
    vec = np.array(amps)
    norm = np.linalg.norm(vec)
    if abs(norm - 1.0) > 1e-6:
        raise ParseError(f"state norm {norm:.9g} is not 1")
    return PureState.from_vector(vec / norm)


def format_state(state: PureState) -> str:
    return "".join(f"{float(a.real)!r} {float(a.imag)!r}\n" for a in state.amplitudes)


def read_hamiltonian(path) -> PauliOperator:
    return parse_hamiltonian(Path(path).read_text())


def read_state(path) -> PureState:
    return parse_state(Path(path).read_text())


def write_hamiltonian(h: PauliOperator, path) -> None:
    Path(path).write_text(format_hamiltonian(h))


def write_state(state: PureState, path) -> None:
    Path(path).write_text(format_state(state))
