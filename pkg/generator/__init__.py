# Generator package
