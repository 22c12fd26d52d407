import os

os.environ['DEBUG'] = 'true'
