"""Setup/hold violation detection and access-time measurement.

A write edge samples WE, the address, and the data input. Each of those
signals must be stable for `t_setup` ps before the edge and `t_hold` ps
after it. Violations do not abort the simulation; they corrupt the
affected bits of the written word to Unknown, which is what a reader
of the device would actually observe.

Access time is measured from each access trigger (an address change, or
a write clock edge) to the last output transition before the next
trigger, i.e. to the point where the output has settled.
"""

from dataclasses import dataclass

from .logic import Bit, BitVector

SETUP = "setup"
HOLD = "hold"

CHECKED_SIGNALS = ("WE", "A", "D")

ADDRESS_CHANGE = "AddressChange"
CLOCK_EDGE = "ClockEdge"


class SignalHistory:
    """Per-signal transition log with strictly increasing times."""

    def __init__(self):
        self._hist = {}

    def record(self, signal: str, time: int, value):
        """Append a transition; a repeat of the current value is a no-op."""
        entries = self._hist.setdefault(signal, [])
        if entries:
            last_t, last_v = entries[-1]
            if time <= last_t:
                raise ValueError(
                    f"non-monotonic record on {signal}: {time} after {last_t}")
            if value == last_v:
                return
        entries.append((time, value))

    def transitions(self, signal: str) -> list:
        return list(self._hist.get(signal, ()))

    def last_transition_at_or_before(self, signal: str, time: int):
        """(time, value) of the newest transition with t <= time, or None."""
        best = None
        for t, v in self._hist.get(signal, ()):
            if t > time:
                break
            best = (t, v)
        return best

    def transitions_in(self, signal: str, lo: int, hi: int) -> list:
        """Transitions with lo < t <= hi, oldest first."""
        return [(t, v) for t, v in self._hist.get(signal, ()) if lo < t <= hi]


@dataclass
class Violation:
    kind: str                # "setup" | "hold"
    signal: str              # "WE" | "A" | "D"
    edge_time: int           # ps
    actual_stable: int       # ps, < required
    required: int            # ps
    bits: tuple = None       # D only: data bits that moved inside the window


@dataclass
class AccessMeasurement:
    trigger_time: int        # ps
    settle_time: int         # ps
    latency: int             # ps, settle - trigger
    cause: str               # "AddressChange" | "ClockEdge"


def _changed_bits(before, window):
    """Bit positions that moved across the window's transitions.

    `before` anchors the value entering the window; without it every bit
    is treated as having moved.
    """
    if not window:
        return ()
    if before is None:
        return tuple(range(window[0][1].width))
    bits = set()
    prev = before[1]
    for _, cur in window:
        bits.update(j for j in range(cur.width) if prev.bit(j) is not cur.bit(j))
        prev = cur
    return tuple(sorted(bits))


def check_setup(history: SignalHistory, edge_time: int, t_setup: int) -> list:
    """Setup violations for a write edge at `edge_time`.

    A signal violates if its last transition landed closer than t_setup
    before the edge (a transition exactly at the edge gives stable 0).
    """
    violations = []
    for signal in CHECKED_SIGNALS:
        last = history.last_transition_at_or_before(signal, edge_time)
        if last is None:
            continue
        stable = edge_time - last[0]
        if stable < t_setup:
            bits = None
            if signal == "D":
                window = history.transitions_in(
                    "D", edge_time - t_setup, edge_time)
                before = history.last_transition_at_or_before(
                    "D", edge_time - t_setup)
                bits = _changed_bits(before, window)
            violations.append(Violation(SETUP, signal, edge_time, stable,
                                        t_setup, bits))
    return violations


def check_hold(history: SignalHistory, edge_time: int, t_hold: int) -> list:
    """Hold violations for a write edge: any transition in (edge, edge+t_hold].

    Only valid once simulation time has passed edge_time + t_hold, so the
    window is fully recorded.
    """
    violations = []
    for signal in CHECKED_SIGNALS:
        window = history.transitions_in(signal, edge_time, edge_time + t_hold)
        if not window:
            continue
        stable = window[0][0] - edge_time
        bits = None
        if signal == "D":
            before = history.last_transition_at_or_before("D", edge_time)
            bits = _changed_bits(before, window)
        violations.append(Violation(HOLD, signal, edge_time, stable,
                                    t_hold, bits))
    return violations


def check_edge(history: SignalHistory, edge_time: int, t_setup: int,
               t_hold: int) -> list:
    """All setup and hold violations around one write edge."""
    return (check_setup(history, edge_time, t_setup)
            + check_hold(history, edge_time, t_hold))


def corrupt_on_violation(sram, violation: Violation, sampled_index):
    """Apply the functional consequence of a violation to the written word.

    A shaky data bit corrupts only that bit; a shaky address or write
    enable makes the whole sampled word indeterminate. Defined bits only
    ever degrade to Unknown, never to a different defined value.
    """
    if sampled_index is None:
        return
    word = sram.mem[sampled_index]
    if violation.signal == "D" and violation.bits is not None:
        bits = list(word.bits)
        for j in violation.bits:
            bits[j] = Bit.UNKNOWN
        sram.mem[sampled_index] = BitVector(tuple(bits))
    else:
        sram.mem[sampled_index] = BitVector.unknown(word.width)


@dataclass(frozen=True)
class TraceEvent:
    """One entry of the access-measurement trace, in time order."""

    time: int
    kind: str  # ADDRESS_CHANGE | CLOCK_EDGE | "Output"


OUTPUT = "Output"


def measure_access(trace) -> list:
    """Pair each access trigger with the output settle that follows it.

    `trace` is a time-ordered list of TraceEvents: address-change and
    write-edge triggers plus fired output updates. The settle point of a
    trigger is the last output event strictly between it and the next
    trigger; a trigger with no such output yields no measurement.
    """
    triggers = [e for e in trace if e.kind != OUTPUT]
    outputs = [e.time for e in trace if e.kind == OUTPUT]
    measurements = []
    for i, trig in enumerate(triggers):
        horizon = next((u.time for u in triggers[i + 1:] if u.time > trig.time),
                       None)
        settle = None
        for t in outputs:
            if t <= trig.time:
                continue
            if horizon is not None and t >= horizon:
                break
            settle = t
        if settle is not None:
            measurements.append(AccessMeasurement(
                trig.time, settle, settle - trig.time, trig.kind))
    return measurements
