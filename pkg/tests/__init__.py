"""Tests for coopkit."""
