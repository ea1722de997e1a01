"""Discrete Dirac operators and Kasteleyn matrices on isoradial graphs in flat surfaces."""
