"""Textual testbench format: timed signal changes plus periodic clocks.

The format is line oriented, UTF-8, with `#` starting a comment:

    signal <name> <width>
    clock <name> period <ps> [duty <a>/<b>] [start <0|1>] [from <ps>]
    at <ps> <name> <literal>
    run <ps>

Times are absolute picoseconds. Literals use the shared grammar of the
logic core (0b binary with x digits, 0x hex, or decimal), zero-extended
to the declared width. Every file must end the timeline with `run`.
"""

from dataclasses import dataclass, field

from .kernel import SIGNAL_RANK, Event
from .logic import Bit, BitVector


class StimulusError(Exception):
    """Parse or validation failure, with a 1-based line number if known."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class ClockSpec:
    signal: str
    period: int
    duty_num: int = 1
    duty_den: int = 2
    start_level: Bit = Bit.ZERO
    start_time: int = 0

    @property
    def high_time(self) -> int:
        return self.period * self.duty_num // self.duty_den

    @property
    def low_time(self) -> int:
        return self.period - self.high_time


@dataclass
class Stimulus:
    declarations: dict = field(default_factory=dict)   # name -> width
    events: list = field(default_factory=list)         # (time, signal, value)
    clocks: list = field(default_factory=list)
    run_until: int = 0


def _int_field(token, what, line, minimum=0):
    try:
        value = int(token)
    except ValueError:
        raise StimulusError(f"{what} must be an integer, got {token!r}", line)
    if value < minimum:
        raise StimulusError(f"{what} must be >= {minimum}, got {value}", line)
    return value


def parse(text: str) -> Stimulus:
    """Parse and fully validate a stimulus program."""
    st = Stimulus()
    run_line = None
    seen_events = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        keyword = tokens[0]

        if keyword == "signal":
            if len(tokens) != 3:
                raise StimulusError("expected: signal <name> <width>", lineno)
            name = tokens[1]
            if name in st.declarations:
                raise StimulusError(f"duplicate signal {name!r}", lineno)
            st.declarations[name] = _int_field(tokens[2], "width", lineno, 1)

        elif keyword == "clock":
            st.clocks.append(_parse_clock(tokens, st, lineno))

        elif keyword == "at":
            if len(tokens) != 4:
                raise StimulusError("expected: at <ps> <name> <literal>", lineno)
            time = _int_field(tokens[1], "time", lineno)
            name = tokens[2]
            if name not in st.declarations:
                raise StimulusError(f"undeclared signal {name!r}", lineno)
            try:
                value = BitVector.from_text(tokens[3], st.declarations[name])
            except ValueError as exc:
                raise StimulusError(str(exc), lineno) from None
            if (name, time) in seen_events:
                raise StimulusError(
                    f"duplicate event for {name!r} at {time}ps", lineno)
            seen_events.add((name, time))
            st.events.append((time, name, value))

        elif keyword == "run":
            if len(tokens) != 2:
                raise StimulusError("expected: run <ps>", lineno)
            if run_line is not None:
                raise StimulusError("duplicate run directive", lineno)
            st.run_until = _int_field(tokens[1], "run time", lineno)
            run_line = lineno

        else:
            raise StimulusError(f"unknown directive {keyword!r}", lineno)

    if run_line is None:
        raise StimulusError("missing run directive")
    for time, name, _ in st.events:
        if time > st.run_until:
            raise StimulusError(
                f"event on {name!r} at {time}ps is after run {st.run_until}ps")
    return st


def _parse_clock(tokens, st, lineno):
    if len(tokens) < 4 or tokens[2] != "period":
        raise StimulusError(
            "expected: clock <name> period <ps> [duty a/b] [start 0|1] [from <ps>]",
            lineno)
    name = tokens[1]
    if name not in st.declarations:
        raise StimulusError(f"undeclared signal {name!r}", lineno)
    if st.declarations[name] != 1:
        raise StimulusError(f"clock signal {name!r} must have width 1", lineno)
    if any(c.signal == name for c in st.clocks):
        raise StimulusError(f"duplicate clock on {name!r}", lineno)
    period = _int_field(tokens[3], "period", lineno, 1)
    duty_num, duty_den = 1, 2
    start_level = Bit.ZERO
    start_time = 0
    rest = tokens[4:]
    i = 0
    while i < len(rest):
        option = rest[i]
        if i + 1 >= len(rest):
            raise StimulusError(f"clock option {option!r} needs a value", lineno)
        arg = rest[i + 1]
        if option == "duty":
            parts = arg.split("/")
            if len(parts) != 2:
                raise StimulusError(f"duty must be <a>/<b>, got {arg!r}", lineno)
            duty_num = _int_field(parts[0], "duty numerator", lineno, 1)
            duty_den = _int_field(parts[1], "duty denominator", lineno, 1)
            if duty_num >= duty_den:
                raise StimulusError("duty must be a proper fraction", lineno)
        elif option == "start":
            if arg not in ("0", "1"):
                raise StimulusError(f"start level must be 0 or 1, got {arg!r}",
                                    lineno)
            start_level = Bit.from_char(arg)
        elif option == "from":
            start_time = _int_field(arg, "clock start time", lineno)
        else:
            raise StimulusError(f"unknown clock option {option!r}", lineno)
        i += 2
    clock = ClockSpec(name, period, duty_num, duty_den, start_level, start_time)
    if clock.high_time < 1 or clock.low_time < 1:
        raise StimulusError(
            f"period {period} with duty {duty_num}/{duty_den} gives a zero-width "
            f"phase", lineno)
    return clock


def clock_events(clock: ClockSpec, until: int) -> list:
    """The clock's (time, level) sequence: start level, then toggles <= until."""
    if clock.start_time > until:
        return []
    events = [(clock.start_time, clock.start_level)]
    level = clock.start_level
    t = clock.start_time
    while True:
        t += clock.high_time if level is Bit.ONE else clock.low_time
        if t > until:
            return events
        level = Bit.ONE if level is Bit.ZERO else Bit.ZERO
        events.append((t, level))


def expand(st: Stimulus) -> list:
    """Merge explicit events with generated clock edges into kernel events.

    Result is sorted by (time, signal rank); an explicit event that lands
    on a generated edge of the same signal is rejected.
    """
    explicit = {(name, time) for time, name, _ in st.events}
    merged = [(time, name, value) for time, name, value in st.events]
    for clock in st.clocks:
        for time, level in clock_events(clock, st.run_until):
            if (clock.signal, time) in explicit:
                raise StimulusError(
                    f"explicit event on {clock.signal!r} at {time}ps collides "
                    f"with a generated clock edge")
            merged.append((time, clock.signal, BitVector((level,))))
    decl_order = {name: i for i, name in enumerate(st.declarations)}
    fallback = len(SIGNAL_RANK)

    def rank(name):
        return SIGNAL_RANK.get(name, fallback + decl_order[name])

    merged.sort(key=lambda e: (e[0], rank(e[1])))
    return [Event(time, name, value) for time, name, value in merged]


def render(st: Stimulus) -> str:
    """Canonical text form; parse(render(s)) is stable under re-rendering."""
    lines = [f"signal {name} {width}" for name, width in st.declarations.items()]
    for c in st.clocks:
        lines.append(
            f"clock {c.signal} period {c.period} duty {c.duty_num}/{c.duty_den} "
            f"start {c.start_level.char} from {c.start_time}")
    decl_order = {name: i for i, name in enumerate(st.declarations)}
    for time, name, value in sorted(
            st.events, key=lambda e: (e[0], decl_order[e[1]])):
        lines.append(f"at {time} {name} {value.render()}")
    lines.append(f"run {st.run_until}")
    return "\n".join(lines) + "\n"
