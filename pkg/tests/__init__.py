"""Tests for Whittaker Zeta."""
