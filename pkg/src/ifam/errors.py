class CapacityError(RuntimeError):
    """Requested enumeration or materialization exceeds a configured limit."""
