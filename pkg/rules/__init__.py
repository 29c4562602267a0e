# Rules package
