"""Glue between a parsed stimulus and one simulation run."""

from .kernel import Schedule, run
from .sram import Sram, SramConfig
from .stimulus import Stimulus, StimulusError, expand
from .timing import SignalHistory
from .vcd import WaveformSink

INPUT_WIDTHS = {"WE": 1, "WCLK": 1}


def device_signals(config: SramConfig) -> list:
    """Trace signal order: inputs in kernel rank order, then the output."""
    return [("WE", 1), ("WCLK", 1), ("A", config.addr_bits),
            ("D", config.data_bits), ("O", config.data_bits)]


def validate_for_device(stim: Stimulus, config: SramConfig):
    """Check that every declared signal is a device input of the right width."""
    expected = dict(INPUT_WIDTHS, A=config.addr_bits, D=config.data_bits)
    for name, width in stim.declarations.items():
        if name not in expected:
            raise StimulusError(
                f"signal {name!r} is not a device input "
                f"(expected one of {', '.join(expected)})")
        if width != expected[name]:
            raise StimulusError(
                f"signal {name!r} has width {width}, device needs "
                f"{expected[name]}")


def simulate(config: SramConfig, stim: Stimulus):
    """Run one stimulus against one device.

    Returns (report, vcd_text, device); the device is handed back so
    callers can inspect the final memory image.
    """
    validate_for_device(stim, config)
    events = expand(stim)
    schedule = Schedule()
    for event in events:
        schedule.schedule(event)
    device = Sram(config)
    history = SignalHistory()
    sink = WaveformSink(device_signals(config))
    report = run(schedule, device, history, sink, stim.run_until)
    return report, sink.text(), device
