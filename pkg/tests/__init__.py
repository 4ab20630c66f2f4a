"""Tests for ecslab."""
