"""Define a basic configuration for Gunicorn serving the analysis app.

Analyses are CPU bound and a single request can take several seconds, so the
timeout is raised above the default.
"""
wsgi_app = 'lie_symmetry:create_app()'

# Send access logs to stdout and error logs to stderr.
accesslog = '-'
errorlog = '-'

workers = 2
timeout = 120
