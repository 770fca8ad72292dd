"""Pipeline settings."""
