# keeps the repository root on sys.path so tests can import config and src
