"""Constants shared by both kernel backends."""

MASK_P = 0x100000001B3
TRACE_Q = 0x9E3779B97F4A7C15
MASK64 = (1 << 64) - 1
