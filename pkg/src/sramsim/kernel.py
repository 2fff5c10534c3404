"""Deterministic discrete-event kernel.

Events are ordered by (time, signal rank, insertion order), with the
fixed rank WE < WCLK < A < D < O. At each timestamp the kernel applies
every input transition, evaluates the device once against the
post-transition snapshot, schedules the resulting output updates, and
runs the timing checks for any write edge. Identical inputs always
produce identical reports and waveforms.
"""

import heapq
from dataclasses import dataclass, field

from .logic import BitVector
from .timing import (ADDRESS_CHANGE, CLOCK_EDGE, OUTPUT, TraceEvent,
                     check_hold, check_setup, corrupt_on_violation,
                     measure_access)

SIGNAL_RANK = {"WE": 0, "WCLK": 1, "A": 2, "D": 3, "O": 4}


@dataclass
class Event:
    time: int          # ps
    signal: str        # WE | WCLK | A | D | O
    value: BitVector


class Schedule:
    """Priority queue of events with a stable, deterministic pop order.

    Output updates landing on an already-pending output time replace the
    pending value (last write wins), so one timestamp never emits a
    glitch train on the output port.
    """

    def __init__(self):
        self._heap = []
        self._seq = 0
        self.now = 0
        self._pending_o = {}

    def __len__(self):
        return len(self._heap)

    def schedule(self, event: Event):
        if event.signal not in SIGNAL_RANK:
            raise ValueError(f"unknown signal {event.signal!r}")
        if event.time < self.now:
            raise ValueError(
                f"event at {event.time}ps is in the past (now {self.now}ps)")
        if event.signal == "O":
            pending = self._pending_o.get(event.time)
            if pending is not None:
                pending.value = event.value
                return
            self._pending_o[event.time] = event
        heapq.heappush(
            self._heap, (event.time, SIGNAL_RANK[event.signal], self._seq, event))
        self._seq += 1

    def next_time(self):
        return self._heap[0][0] if self._heap else None

    def pop_slice(self):
        """Remove and return (time, events) for the earliest timestamp."""
        t = self._heap[0][0]
        events = []
        while self._heap and self._heap[0][0] == t:
            event = heapq.heappop(self._heap)[3]
            if event.signal == "O":
                self._pending_o.pop(t, None)
            events.append(event)
        self.now = t
        return t, events


@dataclass
class SimulationReport:
    final_time: int = 0
    events_processed: int = 0
    writes_committed: int = 0
    violations: list = field(default_factory=list)
    measurements: list = field(default_factory=list)
    diagnostics: list = field(default_factory=list)
    changes: list = field(default_factory=list)   # applied (time, signal, value)


@dataclass
class _PendingHold:
    edge_time: int     # raw stimulus time of the write edge
    index: int         # sampled word, None if the address was undefined
    output_time: int   # when the write's output update lands
    stamp: int = 0     # the word's write generation at this edge


def run(schedule: Schedule, device, history, sink, until: int) -> SimulationReport:
    """Process all events with time <= until and report what happened.

    `history` collects input transitions for the setup/hold checks;
    `sink` receives every applied change in time order. Hold checks are
    deferred until simulation time passes edge + t_hold, then applied
    retroactively to the written word.
    """
    cfg = device.config
    report = SimulationReport()
    trace = []
    pending_holds = []
    staged = {"WE": BitVector((device.we,)),
              "WCLK": BitVector((device.last_wclk,)),
              "A": device.addr, "D": device.data}

    def finalize_holds(before_time):
        remaining = []
        for hold in pending_holds:
            deadline = hold.edge_time + cfg.t_hold
            if before_time is not None and before_time <= deadline:
                remaining.append(hold)
                continue
            viols = check_hold(history, hold.edge_time, cfg.t_hold)
            report.violations.extend(viols)
            rewritten = (hold.index is not None
                         and device.mem_stamp[hold.index] != hold.stamp)
            if rewritten:
                continue   # a later write owns the word now; report only
            for v in viols:
                corrupt_on_violation(device, v, hold.index)
            if (viols and hold.index is not None
                    and device.addressed_index() == hold.index):
                fix_time = max(hold.output_time, deadline)
                schedule.schedule(Event(fix_time, "O", device.mem[hold.index]))
        pending_holds[:] = remaining

    def process_slice(t, events):
        report.final_time = t
        inputs_changed = False
        for e in events:
            report.events_processed += 1
            if e.signal == "O":
                device.set_output(e.value)
                sink.change(t, "O", e.value)
                report.changes.append((t, "O", e.value))
                trace.append(TraceEvent(t, OUTPUT))
            else:
                inputs_changed = True
                staged[e.signal] = e.value
                history.record(e.signal, t, e.value)
                sink.change(t, e.signal, e.value)
                report.changes.append((t, e.signal, e.value))
        if not inputs_changed:
            return
        updates = device.apply(t, staged["WE"].bit(0), staged["WCLK"].bit(0),
                               staged["A"], staged["D"])
        for u in updates:
            schedule.schedule(Event(u.time, u.port, u.value))
        res = device.last_apply
        if res.addr_changed:
            trace.append(TraceEvent(t + cfg.t_ibuf, ADDRESS_CHANGE))
        if res.write_edge:
            trace.append(TraceEvent(t + cfg.t_ibuf, CLOCK_EDGE))
            output_time = t + cfg.t_ibuf + cfg.t_cko + cfg.t_obuf
            setup_viols = check_setup(history, t, cfg.t_setup)
            report.violations.extend(setup_viols)
            if setup_viols and res.sampled_index is not None:
                for v in setup_viols:
                    corrupt_on_violation(device, v, res.sampled_index)
                schedule.schedule(
                    Event(output_time, "O", device.mem[res.sampled_index]))
            stamp = (device.mem_stamp[res.sampled_index]
                     if res.sampled_index is not None else 0)
            pending_holds.append(
                _PendingHold(t, res.sampled_index, output_time, stamp))

    def has_due_events():
        nt = schedule.next_time()
        return nt is not None and nt <= until

    while has_due_events():
        nt = schedule.next_time()
        finalize_holds(nt)
        if schedule.next_time() != nt:
            continue   # a hold fix landed earlier; reconsider
        process_slice(*schedule.pop_slice())

    finalize_holds(None)
    while has_due_events():   # corrected outputs from the last hold checks
        process_slice(*schedule.pop_slice())

    report.writes_committed = device.writes_committed
    report.diagnostics = list(device.diagnostics)
    report.measurements = measure_access(trace)
    return report
