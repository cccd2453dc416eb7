"""Tests for the hyperlim package."""
