"""Adapters for the story caption pipeline."""
