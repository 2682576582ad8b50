"""Built-in subroutines."""
