"""Maximum edge q-colouring: exact search, matching bounds, a Baker-game
approximation scheme and the 1-apex hardness reductions."""

__version__ = "0.1.0"
