"""Tests module."""
