"""algetutor: step-based college algebra tutoring with adaptive practice."""

__version__ = "0.1.0"
