"""
Gunicorn configuration for the Quillen Sectional Category API

Certificate searches are CPU bound and can run for minutes, so workers are
few and the timeout is long.

Usage:
    gunicorn -c deployment/gunicorn.conf.py src.api.main:app
"""

import multiprocessing

# Server socket
bind = "127.0.0.1:8000"  # Bind to localhost (nginx will proxy)
backlog = 64

# Worker processes
workers = max(2, multiprocessing.cpu_count())  # One search per core
worker_class = "uvicorn.workers.UvicornWorker"  # Use Uvicorn workers for ASGI
max_requests = 200  # Restart workers after this many requests (drops lru caches of Lie bases)
max_requests_jitter = 20
timeout = 600  # tc searches on three-copy power models
keepalive = 5

# Logging
accesslog = "/var/log/gunicorn/dgl-api-access.log"
errorlog = "/var/log/gunicorn/dgl-api-error.log"
loglevel = "info"  # debug, info, warning, error, critical

# Process naming
proc_name = "dgl-api"

# Server mechanics
daemon = False  # Don't daemonize (systemd will handle this)
pidfile = "/var/run/gunicorn/dgl-api.pid"

# Environment
raw_env = [
    "APP_ENV=production",
]

# Preload application code before worker processes are forked
preload_app = True


def when_ready(server):
    """Called just after the server is started."""
    print(f"Gunicorn server is ready. Spawning {server.cfg.workers} workers")


def worker_exit(server, worker):
    """Called just after a worker has been exited."""
    print(f"Worker {worker.pid} exited")
