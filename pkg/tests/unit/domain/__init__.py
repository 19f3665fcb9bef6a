"""Domain unit tests."""
