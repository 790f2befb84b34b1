"""Avoid test file name collision."""
