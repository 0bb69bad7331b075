from Sepdec.cli.main import main

__all__ = ["main"]
