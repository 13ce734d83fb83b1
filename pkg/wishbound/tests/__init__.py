"""Tests for the wishbound package."""
