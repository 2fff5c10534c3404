import random

import pytest

from sramsim.logic import Bit, BitVector
from sramsim.sram import Sram, SramConfig

X = Bit.UNKNOWN


def config_16x2(init00=0, init01=0, **kw):
    """Default device with INIT columns given as 16-bit integer masks."""
    return SramConfig(init=(BitVector.from_int(init00, 16),
                            BitVector.from_int(init01, 16)), **kw)


def bv(text, width):
    return BitVector.from_text(text, width)


def settle(updates):
    """Final output value after all scheduled updates are applied in order."""
    value = None
    for u in sorted(updates, key=lambda u: u.time):
        value = u.value
    return value


def drive(device, t, we, wclk, addr, data):
    return device.apply(t, Bit(we), Bit(wclk), bv(addr, device.config.addr_bits),
                        bv(data, device.config.data_bits))


def test_init_column_semantics():
    device = Sram(config_16x2(init00=0x0001, init01=0x0000))
    assert str(device.peek(0)) == "01"
    for w in range(1, 16):
        assert str(device.peek(w)) == "00"


def test_init_defaults_to_zero():
    device = Sram(SramConfig())
    assert all(str(device.peek(w)) == "00" for w in range(16))


def test_init_all_ones():
    device = Sram(config_16x2(init00=0xFFFF, init01=0xFFFF))
    assert all(str(device.peek(w)) == "11" for w in range(16))


def test_config_validation():
    with pytest.raises(ValueError):
        SramConfig(words=12)
    with pytest.raises(ValueError):
        SramConfig(init=(BitVector.zeros(8), BitVector.zeros(16)))
    with pytest.raises(ValueError):
        SramConfig(init=(BitVector.zeros(16),))
    with pytest.raises(ValueError):
        SramConfig(t_ac=0)
    with pytest.raises(ValueError):
        SramConfig(t_setup=-1)


def test_t_cko_defaults_to_t_ac():
    assert SramConfig(t_ac=2500).t_cko == 2500
    assert SramConfig(t_ac=2500, t_cko=1000).t_cko == 1000


def test_read_mode_ignores_clock():
    device = Sram(SramConfig())
    first = drive(device, 0, 0, 0, "0b0011", "0b11")
    updates = drive(device, 1000, 0, 1, "0b0011", "0b11")
    assert str(device.peek(3)) == "00"
    assert updates == []                      # rising edge, but WE is low
    assert str(settle(first)) == "00"         # output shows the stored word


def test_write_on_rising_edge():
    device = Sram(SramConfig())
    drive(device, 0, 1, 0, "0b0101", "0b11")
    updates = drive(device, 1000, 1, 1, "0b0101", "0b11")
    assert str(device.peek(5)) == "11"
    assert len(updates) == 1
    assert updates[0].time == 1000 + 3000
    assert str(updates[0].value) == "11"


def test_falling_edge_does_not_write():
    device = Sram(config_16x2(init00=0x0020, init01=0x0020))  # word 5 = 11
    drive(device, 0, 1, 1, "0b0101", "0b00")
    updates = drive(device, 1000, 1, 0, "0b0101", "0b00")
    assert str(device.peek(5)) == "11"
    assert updates == []


def test_peek_bounds():
    device = Sram(SramConfig())
    with pytest.raises(ValueError):
        device.peek(16)
    with pytest.raises(ValueError):
        device.peek(-1)


def test_read_never_mutates():
    rng = random.Random(3)
    for _ in range(50):
        image = [rng.randrange(4) for _ in range(16)]
        init00 = sum(((v >> 0) & 1) << w for w, v in enumerate(image))
        init01 = sum(((v >> 1) & 1) << w for w, v in enumerate(image))
        device = Sram(config_16x2(init00, init01))
        before = [str(device.peek(w)) for w in range(16)]
        t = 0
        for _ in range(10):
            t += 1000
            device.apply(t, Bit.ZERO, Bit(rng.randint(0, 1)),
                         BitVector.from_int(rng.randrange(16), 4),
                         BitVector.from_int(rng.randrange(4), 2))
        assert [str(device.peek(w)) for w in range(16)] == before


def test_write_first_output():
    device = Sram(SramConfig())
    drive(device, 0, 1, 0, "0b0010", "0b10")
    updates = drive(device, 5000, 1, 1, "0b0010", "0b10")
    assert str(updates[0].value) == "10"
    assert updates[0].value == device.peek(2)


def test_level_insensitive():
    for level in (0, 1):
        device = Sram(SramConfig())
        drive(device, 0, 1, level, "0b0001", "0b11")
        for i in range(1, 6):
            drive(device, i * 1000, 1, level, "0b0001", "0b11")
        assert str(device.peek(1)) == "00"


def test_first_clock_sample_is_not_an_edge():
    # straight to level 1 with WE high: no edge, no write
    device = Sram(SramConfig())
    drive(device, 0, 1, 1, "0b0000", "0b11")
    assert str(device.peek(0)) == "00"
    # and first sample to 0 is not a falling edge for active-low parts
    device = Sram(SramConfig(clock_active_rising=False))
    drive(device, 0, 1, 0, "0b0000", "0b11")
    assert str(device.peek(0)) == "00"


def test_polarity_duality():
    rng = random.Random(17)
    for _ in range(20):
        ops = [(rng.randint(0, 1), rng.randint(0, 1), rng.randrange(16),
                rng.randrange(4)) for _ in range(12)]
        rising = Sram(SramConfig(clock_active_rising=True))
        falling = Sram(SramConfig(clock_active_rising=False))
        t = 0
        for we, clk, addr, data in ops:
            t += 1000
            args = (Bit(we), BitVector.from_int(addr, 4),
                    BitVector.from_int(data, 2))
            up_r = rising.apply(t, args[0], Bit(clk), args[1], args[2])
            up_f = falling.apply(t, args[0], Bit(1 - clk), args[1], args[2])
            assert up_r == up_f
        assert [rising.peek(w) for w in range(16)] == \
               [falling.peek(w) for w in range(16)]


def test_unknown_we_on_active_edge_corrupts():
    device = Sram(config_16x2(init00=0xFFFF, init01=0xFFFF))
    drive(device, 0, 1, 0, "0b0100", "0b00")
    updates = device.apply(1000, X, Bit.ONE, bv("0b0100", 4), bv("0b00", 2))
    assert device.peek(4) == BitVector.unknown(2)
    assert updates[0].value == BitVector.unknown(2)


def test_indeterminate_edge_with_we_high_corrupts():
    device = Sram(config_16x2(init00=0xFFFF, init01=0xFFFF))
    drive(device, 0, 1, 0, "0b0100", "0b00")
    device.apply(1000, Bit.ONE, X, bv("0b0100", 4), bv("0b00", 2))
    assert device.peek(4) == BitVector.unknown(2)


def test_we_low_never_corrupts_even_on_indeterminate_edge():
    device = Sram(config_16x2(init00=0xFFFF, init01=0xFFFF))
    drive(device, 0, 0, 0, "0b0100", "0b00")
    device.apply(1000, Bit.ZERO, X, bv("0b0100", 4), bv("0b00", 2))
    assert str(device.peek(4)) == "11"


def test_write_with_unknown_address():
    device = Sram(config_16x2(init00=0xFFFF, init01=0x0000))
    drive(device, 0, 1, 0, "0b0000", "0b10")
    updates = device.apply(1000, Bit.ONE, Bit.ONE, bv("0b1x00", 4), bv("0b10", 2))
    # no word is corrupted, but the output is unknowable and it is reported
    assert all(device.peek(w).is_fully_defined() for w in range(16))
    assert device.diagnostics
    assert BitVector.unknown(2) in [u.value for u in updates]


def test_address_change_schedules_read():
    device = Sram(config_16x2(init00=0x0008, init01=0x0000))  # word 3 = 01
    updates = drive(device, 0, 0, 0, "0b0011", "0b00")
    assert len(updates) == 1
    assert updates[0].time == 3000
    assert str(updates[0].value) == "01"


def test_address_change_to_unknown_outputs_unknown():
    device = Sram(SramConfig())
    drive(device, 0, 0, 0, "0b0011", "0b00")
    updates = device.apply(1000, Bit.ZERO, Bit.ZERO, bv("0b0x11", 4), bv("0b00", 2))
    assert updates[0].value == BitVector.unknown(2)


def test_buffer_delays_shift_updates():
    device = Sram(SramConfig(t_ibuf=100, t_obuf=50))
    updates = drive(device, 0, 0, 0, "0b0001", "0b00")
    assert updates[0].time == 0 + 100 + 3000 + 50
    drive(device, 1000, 1, 0, "0b0001", "0b01")
    updates = drive(device, 2000, 1, 1, "0b0001", "0b01")
    assert updates[0].time == 2000 + 100 + 3000 + 50


def test_apply_validates_widths_and_time():
    device = Sram(SramConfig())
    with pytest.raises(ValueError):
        device.apply(0, Bit.ZERO, Bit.ZERO, bv("0b001", 3), bv("0b00", 2))
    with pytest.raises(ValueError):
        device.apply(0, Bit.ZERO, Bit.ZERO, bv("0b0001", 4), bv("0b0", 1))
    drive(device, 100, 0, 0, "0b0000", "0b00")
    with pytest.raises(ValueError):
        drive(device, 100, 0, 0, "0b0001", "0b00")


def oracle_step(mem, we, prev, nxt, addr, data):
    """Plain-array model of the operating-mode table, rising-edge part."""
    mem = list(mem)
    if we == 1 and (prev, nxt) == (0, 1):
        mem[addr] = data
        out = data
    else:
        out = mem[addr]
    return mem, out


def test_mode_table_conformance_sample():
    # small slice of the exhaustive acceptance sweep
    rng = random.Random(23)
    for _ in range(5):
        image = [rng.randrange(4) for _ in range(16)]
        init00 = sum(((v >> 0) & 1) << w for w, v in enumerate(image))
        init01 = sum(((v >> 1) & 1) << w for w, v in enumerate(image))
        config = config_16x2(init00, init01)
        for we in (0, 1):
            for prev, nxt in ((0, 0), (0, 1), (1, 0), (1, 1)):
                for addr in range(0, 16, 5):
                    for data in range(4):
                        device = Sram(config)
                        u1 = device.apply(1000, Bit(we), Bit(prev),
                                          BitVector.from_int(addr, 4),
                                          BitVector.from_int(data, 2))
                        u2 = device.apply(2000, Bit(we), Bit(nxt),
                                          BitVector.from_int(addr, 4),
                                          BitVector.from_int(data, 2))
                        exp_mem, exp_out = oracle_step(image, we, prev, nxt,
                                                       addr, data)
                        got_mem = [device.peek(w).to_index() for w in range(16)]
                        assert got_mem == exp_mem
                        assert settle(u1 + u2).to_index() == exp_out
