# API module

