"""Pipeline runs and their stage runners."""
