"""Cycle-accurate simulator for synchronous-write, asynchronous-read SRAM.

The package splits into small pieces: `logic` (three-valued bits and
vectors), `sram` (the device model), `kernel` (discrete-event
scheduler), `timing` (setup/hold checks and access measurement),
`stimulus` (testbench file format), `vcd` (waveform output), `driver`
(one-call simulation), `figures` (plots), and `cli`.
"""

from .driver import simulate
from .kernel import Event, Schedule, SimulationReport, run
from .logic import Bit, BitVector
from .sram import Sram, SramConfig
from .stimulus import Stimulus, StimulusError, expand, parse, render
from .timing import AccessMeasurement, SignalHistory, Violation
from .vcd import WaveformSink

__all__ = [
    "AccessMeasurement", "Bit", "BitVector", "Event", "Schedule",
    "SignalHistory", "SimulationReport", "Sram", "SramConfig", "Stimulus",
    "StimulusError", "Violation", "WaveformSink", "expand", "parse",
    "render", "run", "simulate",
]
