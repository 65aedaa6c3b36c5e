import signal
import sys

from adm.cli import main

DEFAULT_ARGS = ["simulate", "--config", "config.yaml"]


def signal_handler(sig, frame):
    """stop cleanly on Ctrl-C / SIGTERM"""
    print("received termination signal, stopping", file=sys.stderr)
    sys.exit(130)


if __name__ == "__main__":
    signal.signal(signal.SIGINT, signal_handler)
    signal.signal(signal.SIGTERM, signal_handler)

    # no arguments: run the default experiment from config.yaml
    sys.exit(main(sys.argv[1:] or DEFAULT_ARGS))
