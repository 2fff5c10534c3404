"""Three-valued logic scalars and fixed-width bit vectors.

Every signal and memory cell in the simulator is built from ``Bit``
(0, 1, or x) and ``BitVector``. Values are immutable; operations
return new objects.
"""

from dataclasses import dataclass
from enum import Enum


class Bit(Enum):
    ZERO = 0
    ONE = 1
    UNKNOWN = 2

    @classmethod
    def from_char(cls, ch: str) -> "Bit":
        try:
            return _BIT_BY_CHAR[ch]
        except KeyError:
            raise ValueError(f"not a bit character: {ch!r}") from None

    @property
    def char(self) -> str:
        return "01x"[self.value]

    def __repr__(self):
        return f"Bit.{self.name}"


_BIT_BY_CHAR = {"0": Bit.ZERO, "1": Bit.ONE, "x": Bit.UNKNOWN, "X": Bit.UNKNOWN}

_HEX_DIGITS = "0123456789abcdefABCDEF"


@dataclass(frozen=True)
class BitVector:
    """Fixed-width vector of Bits. bits[0] is the least-significant bit."""

    bits: tuple

    def __post_init__(self):
        if not self.bits:
            raise ValueError("BitVector must have at least one bit")
        if not all(isinstance(b, Bit) for b in self.bits):
            raise ValueError("BitVector bits must be Bit values")

    @property
    def width(self) -> int:
        return len(self.bits)

    @classmethod
    def unknown(cls, width: int) -> "BitVector":
        return cls((Bit.UNKNOWN,) * width)

    @classmethod
    def zeros(cls, width: int) -> "BitVector":
        return cls((Bit.ZERO,) * width)

    @classmethod
    def from_int(cls, value: int, width: int) -> "BitVector":
        if width <= 0:
            raise ValueError("width must be positive")
        if value < 0:
            raise ValueError("value must be non-negative")
        if value >> width:
            raise ValueError(f"value {value} does not fit in {width} bits")
        return cls(tuple(Bit((value >> i) & 1) for i in range(width)))

    @classmethod
    def from_text(cls, text: str, width: int) -> "BitVector":
        """Parse a literal into a vector of exactly `width` bits.

        Accepted forms: ``0b`` binary (digits 0/1/x), ``0x`` hex, or a
        plain decimal integer. Short literals are zero-extended at the
        most-significant end; ``x`` digits are only legal in binary.
        """
        if width <= 0:
            raise ValueError("width must be positive")
        if text.startswith(("0b", "0B")):
            digits = text[2:]
            if not digits or any(ch not in "01xX" for ch in digits):
                raise ValueError(f"malformed binary literal: {text!r}")
            # leading zeros are harmless, anything else overflows
            while len(digits) > width and digits[0] == "0":
                digits = digits[1:]
            if len(digits) > width:
                raise ValueError(f"literal {text!r} exceeds width {width}")
            digits = "0" * (width - len(digits)) + digits
            return cls(tuple(Bit.from_char(ch) for ch in reversed(digits)))
        if text.startswith(("0x", "0X")):
            digits = text[2:]
            if not digits or any(ch not in _HEX_DIGITS for ch in digits):
                raise ValueError(f"malformed hex literal: {text!r}")
            value = int(digits, 16)
        else:
            if not text or not text.isdigit():
                raise ValueError(f"malformed literal: {text!r}")
            value = int(text, 10)
        if value >> width:
            raise ValueError(f"literal {text!r} exceeds width {width}")
        return cls.from_int(value, width)

    def is_fully_defined(self) -> bool:
        return all(b is not Bit.UNKNOWN for b in self.bits)

    def to_index(self):
        """Decode to an unsigned integer, or None if any bit is Unknown."""
        if not self.is_fully_defined():
            return None
        return sum(1 << i for i, b in enumerate(self.bits) if b is Bit.ONE)

    def bit(self, i: int) -> Bit:
        return self.bits[i]

    def __str__(self):
        """MSB-first bit characters, e.g. '1x00'."""
        return "".join(b.char for b in reversed(self.bits))

    def render(self) -> str:
        """Canonical parseable form ('0b' + MSB-first digits)."""
        return "0b" + str(self)
