# Set the isograd version
__version__ = '0.1.0dev'
