"""Independent brute-force reference computations used to pin down expected values."""
