"""Test suite for smallcut package."""
