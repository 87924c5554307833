# Schemas module

