"""Historical people networks: dated corpus, per-year contemporaneity graphs,
PageRank leaderboards, and a servable bundle of the results."""

__version__ = "0.1.0"

HORIZON_START = -3000
HORIZON_END = 1950
