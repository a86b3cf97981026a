"""Total witness predicates over fixed-length bit strings."""

from __future__ import annotations

from typing import Callable, Iterable, Optional

from hamwit.core import BitString


class Verifier:
    """A deterministic accept/reject predicate on ``witness_length``-bit strings.

    Subclasses implement :meth:`accepts_value`, which receives the witness as
    an integer (most significant bit first). :meth:`accepts` is the checked
    public entry point.
    """

    witness_length: int
    label: str = "verifier"

    def accepts_value(self, value: int) -> bool:
        raise NotImplementedError

    def accepts(self, w: BitString) -> bool:
        if w.length != self.witness_length:
            raise ValueError(
                f"{self.label}: expected {self.witness_length}-bit witness, got {w.length}"
            )
        return self.accepts_value(w.value)

    def __call__(self, w: BitString) -> bool:
        return self.accepts(w)


class PredicateVerifier(Verifier):
    """Wraps a predicate on BitStrings."""

    def __init__(self, witness_length: int, predicate: Callable[[BitString], bool], label: str = "predicate"):
        self.witness_length = witness_length
        self._predicate = predicate
        self.label = label

    def accepts_value(self, value: int) -> bool:
        return bool(self._predicate(BitString(value, self.witness_length)))


class SetVerifier(Verifier):
    """Accepts exactly the listed witnesses."""

    def __init__(self, witness_length: int, witnesses: Iterable[BitString | str | int] = (), label: Optional[str] = None):
        self.witness_length = witness_length
        values = set()
        for w in witnesses:
            if isinstance(w, str):
                w = BitString.from_str(w)
            if isinstance(w, BitString):
                if w.length != witness_length:
                    raise ValueError("witness length mismatch")
                w = w.value
            if not 0 <= w < 1 << witness_length:
                raise ValueError(f"witness {w} out of range")
            values.add(w)
        self.values = frozenset(values)
        self.label = label or f"set[{len(self.values)}]"

    def accepts_value(self, value: int) -> bool:
        return value in self.values
