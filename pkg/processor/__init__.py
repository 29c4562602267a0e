# Processor package
