from __future__ import annotations

from trimap.core.platform import Platform


_default_platform: Platform | None = None


def get_platform() -> Platform:
    """Platform built from the packaged `platform.yaml`, created on first use."""
    global _default_platform

    if _default_platform is None:
        _default_platform = Platform.from_env()
    return _default_platform
