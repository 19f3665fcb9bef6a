"""Application unit tests."""
