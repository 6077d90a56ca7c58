import functools
import threading


def singleton(cls):
    """
    Class decorator returning the same instance on every call.

    The first call's arguments build the instance; later arguments are ignored.
    ``reset()`` on the wrapper drops the instance so the next call rebuilds it
    (tests use this after changing environment variables).
    """
    instances = {}
    lock = threading.Lock()

    @functools.wraps(cls)
    def wrapper(*args, **kwargs):
        with lock:
            if cls not in instances:
                instances[cls] = cls(*args, **kwargs)
            return instances[cls]

    def reset():
        with lock:
            instances.pop(cls, None)

    wrapper.reset = reset
    return wrapper
