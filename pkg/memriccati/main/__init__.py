from flask import Blueprint

main = Blueprint('main', __name__, cli_group = None)

from . import commands
