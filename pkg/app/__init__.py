# app package 