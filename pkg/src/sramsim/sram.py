"""Behavioral model of a synchronous-write, asynchronous-read static RAM.

The device is a W-word by B-bit RAM. Writes are clocked: when write
enable is high, an active edge on the write clock loads the data input
into the word selected by the address. Reads are combinational: the
output continuously follows the addressed word, after the configured
access delay. The write path is write-first, so the output shows the
newly written data right after a write edge.

The model is three-valued. Uninitialized inputs, indeterminate clock
edges, and timing-violation corruption all surface as Unknown bits.
"""

from dataclasses import dataclass, field

from .logic import Bit, BitVector

# Edge classifications for the write clock.
EDGE_NONE = "none"
EDGE_ACTIVE = "active"
EDGE_INACTIVE = "inactive"
EDGE_INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class SramConfig:
    """Device geometry, polarity, initial contents, and timing (all ps).

    `init` holds one vector per output bit: init[b] has one bit per word,
    and bit w of init[b] seeds bit b of word w. `t_ac` is the address-to-
    output access time, `t_cko` the active-edge-to-output delay (defaults
    to t_ac). `t_ibuf`/`t_obuf` are optional input/output buffer delays.
    """

    words: int = 16
    data_bits: int = 2
    clock_active_rising: bool = True
    init: tuple = None
    t_setup: int = 1000
    t_hold: int = 500
    t_ac: int = 3000
    t_cko: int = None
    t_ibuf: int = 0
    t_obuf: int = 0

    def __post_init__(self):
        if self.words < 2 or self.words & (self.words - 1):
            raise ValueError(f"words must be a power of two >= 2, got {self.words}")
        if self.data_bits < 1:
            raise ValueError("data_bits must be positive")
        if self.t_cko is None:
            object.__setattr__(self, "t_cko", self.t_ac)
        if self.init is None:
            object.__setattr__(
                self, "init",
                tuple(BitVector.zeros(self.words) for _ in range(self.data_bits)))
        else:
            object.__setattr__(self, "init", tuple(self.init))
        if len(self.init) != self.data_bits:
            raise ValueError(
                f"need {self.data_bits} init vectors, got {len(self.init)}")
        for iv in self.init:
            if iv.width != self.words:
                raise ValueError(
                    f"init vector width {iv.width} != word count {self.words}")
        if self.t_setup < 0 or self.t_hold < 0 or self.t_ibuf < 0 or self.t_obuf < 0:
            raise ValueError("delays must be non-negative")
        if self.t_ac <= 0 or self.t_cko <= 0:
            raise ValueError("t_ac and t_cko must be positive")

    @property
    def addr_bits(self) -> int:
        return self.words.bit_length() - 1


@dataclass
class PortUpdate:
    """A scheduled output transition: the port takes `value` at `time`."""

    time: int
    port: str
    value: BitVector


@dataclass
class ApplyResult:
    """What one evaluation did, beyond the scheduled output updates."""

    wrote: bool = False            # committed a write (possibly later corrupted)
    write_edge: bool = False       # active edge sampled with WE == 1
    corrupted: bool = False        # indeterminate write turned a word Unknown
    addr_changed: bool = False
    sampled_index: int = None      # decoded address at the edge, None if unknown
    updates: list = field(default_factory=list)


class Sram:
    """Mutable device state driven by `apply`; owned by a single kernel."""

    def __init__(self, config: SramConfig):
        self.config = config
        self.mem = [
            BitVector(tuple(config.init[b].bit(w) for b in range(config.data_bits)))
            for w in range(config.words)
        ]
        self.last_wclk = Bit.UNKNOWN
        self.we = Bit.UNKNOWN
        self.addr = BitVector.unknown(config.addr_bits)
        self.data = BitVector.unknown(config.data_bits)
        self.o = BitVector.unknown(config.data_bits)
        self.writes_committed = 0
        self.diagnostics = []
        self.last_apply = ApplyResult()
        # bumped on every write event; lets deferred hold checks tell whether
        # a word was rewritten after the edge they are guarding
        self.mem_stamp = [0] * config.words
        self._serial = 0
        self._wclk_seen_defined = False
        self._last_t = None

    def peek(self, word: int) -> BitVector:
        """Read a stored word without touching device state."""
        if not 0 <= word < self.config.words:
            raise ValueError(f"word {word} out of range [0, {self.config.words})")
        return self.mem[word]

    def poke(self, word: int, value: BitVector):
        """Overwrite a stored word directly (test/debug back door)."""
        if not 0 <= word < self.config.words:
            raise ValueError(f"word {word} out of range [0, {self.config.words})")
        if value.width != self.config.data_bits:
            raise ValueError("poke value width mismatch")
        self.mem[word] = value

    def addressed_index(self):
        return self.addr.to_index()

    def set_output(self, value: BitVector):
        self.o = value

    def _stamp(self, idx):
        self._serial += 1
        self.mem_stamp[idx] = self._serial

    def _classify_edge(self, prev: Bit, nxt: Bit) -> str:
        if prev is nxt:
            return EDGE_NONE
        if prev is Bit.UNKNOWN and not self._wclk_seen_defined:
            # first clock sample never counts as an edge
            return EDGE_NONE
        if prev is Bit.UNKNOWN or nxt is Bit.UNKNOWN:
            return EDGE_INDETERMINATE
        rising = prev is Bit.ZERO and nxt is Bit.ONE
        if rising == self.config.clock_active_rising:
            return EDGE_ACTIVE
        return EDGE_INACTIVE

    def apply(self, t: int, we: Bit, wclk: Bit, addr: BitVector,
              data: BitVector) -> list:
        """Evaluate the device once with the post-transition input snapshot.

        Returns the output updates this evaluation schedules. Memory is
        mutated in place for writes; `last_apply` describes what happened
        so the caller can run timing checks against a write edge.
        """
        cfg = self.config
        if addr.width != cfg.addr_bits:
            raise ValueError(f"addr width {addr.width} != {cfg.addr_bits}")
        if data.width != cfg.data_bits:
            raise ValueError(f"data width {data.width} != {cfg.data_bits}")
        if self._last_t is not None and t <= self._last_t:
            raise ValueError(f"apply time {t} not after {self._last_t}")
        self._last_t = t

        edge = self._classify_edge(self.last_wclk, wclk)
        result = ApplyResult(addr_changed=addr != self.addr)
        t_eff = t + cfg.t_ibuf

        self.we = we
        self.addr = addr
        self.data = data

        idx = addr.to_index()
        result.sampled_index = idx

        if we is Bit.ONE and edge == EDGE_ACTIVE:
            result.write_edge = True
            if idx is None:
                # no specific word is corrupted, but the output is unknowable
                self.diagnostics.append(
                    f"write at {t}ps with undefined address: no word written, "
                    f"output forced unknown")
                result.updates.append(PortUpdate(
                    t_eff + cfg.t_cko + cfg.t_obuf, "O",
                    BitVector.unknown(cfg.data_bits)))
            else:
                self.mem[idx] = data
                self._stamp(idx)
                self.writes_committed += 1
                result.wrote = True
                result.updates.append(PortUpdate(
                    t_eff + cfg.t_cko + cfg.t_obuf, "O", data))
        elif we is not Bit.ZERO and (
                edge == EDGE_INDETERMINATE
                or (edge == EDGE_ACTIVE and we is Bit.UNKNOWN)):
            # a write may or may not have happened: conservative corruption
            result.corrupted = True
            if idx is None:
                self.diagnostics.append(
                    f"indeterminate write at {t}ps with undefined address: "
                    f"output forced unknown")
            else:
                self.mem[idx] = BitVector.unknown(cfg.data_bits)
                self._stamp(idx)
            result.updates.append(PortUpdate(
                t_eff + cfg.t_cko + cfg.t_obuf, "O",
                BitVector.unknown(cfg.data_bits)))

        if result.addr_changed:
            if idx is None:
                value = BitVector.unknown(cfg.data_bits)
            else:
                value = self.mem[idx]
            result.updates.append(PortUpdate(
                t_eff + cfg.t_ac + cfg.t_obuf, "O", value))

        self.last_wclk = wclk
        if wclk is not Bit.UNKNOWN:
            self._wclk_seen_defined = True
        self.last_apply = result
        return result.updates
