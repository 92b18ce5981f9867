"""Exact-arithmetic toolkit for geometric structures on solvable Lie algebras.

Verdicts (locally conformally Kähler, Vaisman, Sasakian, coKähler, flat,
left-symmetric, ...) are decided in exact rational arithmetic over structure
constants; constructions (central/double extensions, oscillator algebras,
rank-one reductions and their inverses) are exact as well.  The single
floating-point routine in the package is the adapted-basis display helper,
which never feeds a verdict.
"""

from __future__ import annotations

__version__ = "0.1.0"
