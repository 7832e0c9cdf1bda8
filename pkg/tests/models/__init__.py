"""Value type tests."""
