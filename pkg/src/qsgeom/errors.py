"""Error taxonomy.

Two failure classes are distinguished everywhere:

* ``StructureError`` -- the inputs cannot be combined at all (dimension or
  grid mismatch, non-Hermitian operator, too few samples).  Retrying with
  different numerical parameters cannot help.
* ``DomainError`` -- the inputs are well-formed but the requested point or
  state is outside the region where the operation is defined (zero state,
  stencil leaving the declared box, singular metric).
"""

from __future__ import annotations


class QsgeomError(Exception):
    """Base class for all library errors."""


class StructureError(QsgeomError):
    """Inputs are structurally incompatible (shapes, grids, hermiticity)."""


class DomainError(QsgeomError):
    """Operation undefined at the requested point or state."""


class DomainExitError(DomainError):
    """An integration left its domain box.

    Carries the partial path computed up to the exit so callers can inspect
    how far the trajectory got.
    """

    def __init__(self, message: str, partial_path=None):
        super().__init__(message)
        self.partial_path = partial_path
