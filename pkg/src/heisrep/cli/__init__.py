"""Expression language and command line interface."""
