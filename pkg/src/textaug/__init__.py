"""textaug: augmentation, quality scoring, and downstream evaluation for
under-represented classes in multi-label text datasets."""

__version__ = "0.1.0"
