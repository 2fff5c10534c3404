"""Minimal VCD (Value Change Dump) writer.

Emits the subset every waveform viewer understands: timescale, var
declarations, an initial $dumpvars block, then timestamped value
changes. Identifier codes are assigned in declaration order starting at
'!' (ASCII 33). The timescale is fixed at 1 ps and all line endings are
LF, so output bytes are stable across runs.
"""

import io

from .logic import BitVector


class WaveformSink:
    def __init__(self, signals):
        """`signals` is an ordered list of (name, width) pairs."""
        self._out = io.StringIO()
        self._codes = {}
        self._widths = {}
        self._last = {}
        self._marker = None
        self._out.write("$timescale 1ps $end\n")
        for i, (name, width) in enumerate(signals):
            if name in self._codes:
                raise ValueError(f"duplicate signal name {name!r}")
            code = chr(33 + i)
            self._codes[name] = code
            self._widths[name] = width
            self._out.write(f"$var wire {width} {code} {name} $end\n")
        self._out.write("$enddefinitions $end\n")
        self._out.write("$dumpvars\n")
        for name in self._codes:
            initial = self._render(name, BitVector.unknown(self._widths[name]))
            self._last[name] = initial
            self._out.write(initial + "\n")
        self._out.write("$end\n")

    def _render(self, name, value):
        code = self._codes[name]
        if value.width == 1:
            return f"{value.bits[0].char}{code}"
        return f"b{value} {code}"

    def change(self, time: int, signal: str, value: BitVector):
        """Record a value change; repeats of the last value are dropped."""
        if signal not in self._codes:
            raise ValueError(f"undeclared signal {signal!r}")
        if value.width != self._widths[signal]:
            raise ValueError(
                f"width {value.width} != declared {self._widths[signal]} "
                f"for {signal!r}")
        if self._marker is not None and time < self._marker:
            raise ValueError(
                f"time {time} before current marker {self._marker}")
        rendered = self._render(signal, value)
        if rendered == self._last[signal]:
            return
        if self._marker is None or time > self._marker:
            self._out.write(f"#{time}\n")
            self._marker = time
        self._out.write(rendered + "\n")
        self._last[signal] = rendered

    def text(self) -> str:
        return self._out.getvalue()
