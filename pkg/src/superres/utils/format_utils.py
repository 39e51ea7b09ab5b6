def format_duration(seconds: float) -> str:
    """Compact duration: 4.2s, 3m7s, 1h2m."""
    seconds = max(0.0, seconds)
    if seconds < 60:
        return f"{seconds:.1f}s"
    minutes, secs = divmod(int(seconds), 60)
    if minutes < 60:
        return f"{minutes}m{secs}s" if secs else f"{minutes}m"
    hours, minutes = divmod(minutes, 60)
    return f"{hours}h{minutes}m" if minutes else f"{hours}h"


def format_complex(value: complex, digits: int = 6) -> str:
    return f"{value.real:.{digits}e}{value.imag:+.{digits}e}j"
